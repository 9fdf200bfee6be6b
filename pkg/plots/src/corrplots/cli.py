"""corrplots: regenerate figures from fermicorr sweep CSVs."""

from __future__ import annotations

import argparse
from typing import Optional, Sequence

from .figures import FigureSpec, plot_nu_summary, plot_profiles


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="corrplots", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profiles", help="log-log correlation profiles, one panel per alpha")
    p.add_argument("--csv", required=True, help="profiles CSV (schema profiles-v1)")
    p.add_argument("--out", required=True, help="output SVG path")

    n = sub.add_parser("nu-summary", help="exponent vs alpha with the excluded region")
    n.add_argument("--csv", required=True, help="summary CSV (schema nu-summary-v1)")
    n.add_argument("--out", required=True, help="output SVG path")

    ns = ap.parse_args(argv)
    if ns.command == "profiles":
        path = plot_profiles(FigureSpec(csv_path=ns.csv, kind="profiles", output_path=ns.out))
    else:
        path = plot_nu_summary(FigureSpec(csv_path=ns.csv, kind="nu_summary", output_path=ns.out))
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
