#!/usr/bin/env python3
"""Sweep the builtin corpus and print one verification row per run.

For every polytope and seeded generic direction this builds the fixed
point table, runs the four Betti routes, the ring relations, and the
piecewise model checks, and prints a table of outcomes.  Exits nonzero
if any run fails, so it doubles as a quick end-to-end health check.

    python scripts/corpus_report.py --seeds 3 --json out.json
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from torograd import (builtin, f_table, graded_report, normal_fan,
                      sample_generic, verify_brion, verify_relations)


@dataclass
class SweepConfig:
    seeds: int = 2
    skip_brion: bool = False
    json_path: str | None = None
    specs: list = field(default_factory=lambda: [
        ("cp2", ()),
        ("cp1xcp1", ()),
        ("hirzebruch", (0,)),
        ("hirzebruch", (1,)),
        ("hirzebruch", (2,)),
        ("hirzebruch", (3,)),
        ("cube", (3,)),
        ("simplex", (1,)),
        ("simplex", (2,)),
        ("simplex", (3,)),
        ("simplex", (4,)),
    ])


def run_sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for name, args in cfg.specs:
        label = name if not args else f"{name}({','.join(map(str, args))})"
        p = builtin(name, *args)
        for seed in range(cfg.seeds):
            gamma = sample_generic(p, seed)
            t0 = time.monotonic()
            table = f_table(p, gamma)
            rep = graded_report(table)
            rel = verify_relations(table)
            brion_ok = None
            if not cfg.skip_brion:
                brion_ok = verify_brion(normal_fan(p), p, gamma).ok
            rows.append({
                "polytope": label,
                "seed": seed,
                "gamma": list(gamma),
                "gr_dims": rep.gr_dims,
                "four_way": rep.four_way_agreement(),
                "relations": rel.ok,
                "brion": brion_ok,
                "seconds": round(time.monotonic() - t0, 3),
            })
    return rows


def print_rows(rows: list[dict]) -> None:
    headers = ["polytope", "seed", "gamma", "gr_dims", "four_way",
               "relations", "brion", "seconds"]
    cells = [[str(r[h]) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells))
              for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for c in cells:
        print("  ".join(x.ljust(w) for x, w in zip(c, widths)))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=2,
                        help="generic directions per polytope (default 2)")
    parser.add_argument("--skip-brion", action="store_true",
                        help="skip the piecewise model checks (faster)")
    parser.add_argument("--json", dest="json_path", default=None,
                        help="also write the rows as JSON to this path")
    ns = parser.parse_args(argv)
    cfg = SweepConfig(seeds=ns.seeds, skip_brion=ns.skip_brion,
                      json_path=ns.json_path)
    rows = run_sweep(cfg)
    print_rows(rows)
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(rows, fh, indent=2)
        print(f"wrote {cfg.json_path}")
    bad = [r for r in rows
           if not (r["four_way"] and r["relations"] and r["brion"] in (True, None))]
    if bad:
        print(f"{len(bad)} failing run(s)", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
