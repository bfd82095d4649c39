#!/usr/bin/env python3
"""
Script to regenerate the data behind the four expansion-rate figures.

Writes one CSV per figure into OUT_DIR (default: current directory):
1. fig2_fidelity.csv            - entanglement fidelity, GHZ and W
2. fig3_mutual_information.csv  - bipartite mutual information, GHZ and W
3. fig4_ghz.csv                 - GHZ tripartite information and negativity
4. fig5_w.csv                   - W tripartite information and negativity
"""

import os
import sys
import traceback

from app import create_app
from models import ClosedFormMode, GammaGrid, Measure, StateKind, SweepConfig
from services.export_service import emit
from services.sweep_service import run_sweep

FIGURES = (
    ("fig2_fidelity.csv", (StateKind.GHZ, StateKind.W), (Measure.FIDELITY,)),
    ("fig3_mutual_information.csv", (StateKind.GHZ, StateKind.W), (Measure.MI_AB,)),
    ("fig4_ghz.csv", (StateKind.GHZ,), (Measure.MI_ABC, Measure.NEGATIVITY)),
    ("fig5_w.csv", (StateKind.W,), (Measure.MI_ABC, Measure.NEGATIVITY)),
)


def figure_records(config, kinds, measures):
    grid = GammaGrid(config["GAMMA_MIN"], config["GAMMA_MAX"], config["GAMMA_STEP"])
    records = []
    for kind in kinds:
        cfg = SweepConfig(
            kind=kind,
            measures=measures,
            gamma_grid=grid,
            tail_tol=config["TAIL_TOL"],
            closed_form=ClosedFormMode.BOTH,
            workers=config["WORKERS"],
        )
        records.extend(
            run_sweep(
                cfg,
                max_truncation=config["MAX_TRUNCATION"],
                relaxed_tail_tol=config["RELAXED_TAIL_TOL"],
                relaxed_gamma=config["RELAXED_GAMMA"],
            )
        )
    return records


def generate_figures(app, out_dir):
    """Write every figure file into ``out_dir`` and return the paths written."""
    written = []
    with app.app_context():
        for step, (filename, kinds, measures) in enumerate(FIGURES, start=1):
            path = os.path.join(out_dir, filename)
            print(f"\n[{step}/{len(FIGURES)}] Writing {filename}...")
            records = figure_records(app.config, kinds, measures)
            emit(records, "csv", path)
            print(f"      ✓ {len(records)} rows written to {path}")
            written.append(path)
    return written


if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
    print("=" * 60)
    print("GENERATING FIGURE DATA")
    print("=" * 60)
    try:
        os.makedirs(out_dir, exist_ok=True)
        generate_figures(create_app(), out_dir)
    except Exception as e:
        print(f"      ✗ Error generating figure data: {e}")
        traceback.print_exc()
        sys.exit(1)

    print("\n" + "=" * 60)
    print("ALL DONE! ✓")
    print("=" * 60)
