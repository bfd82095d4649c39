# Blueprints module
