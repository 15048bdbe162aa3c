"""Sweep the verification suite over dimensions, orders and seeds.

    python3 scripts/run_verification.py --dims 2 3 4 5 --seeds 1 2 3 --trials 50 --out sweep.json

Every (n, k, seed) run of every case becomes one row of the output table.
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from ktrace.verify import TrialConfig, run_case, suite_ids


@dataclass
class SweepConfig:
    dims: tuple = (2, 3, 4, 5)
    seeds: tuple = (42,)
    trials: int = 30
    threads: int = 1
    cases: tuple = ()


def sweep(cfg: SweepConfig) -> list:
    rows = []
    cases = cfg.cases or tuple(suite_ids())
    for n in cfg.dims:
        for k in range(1, n + 1):
            for seed in cfg.seeds:
                trial_cfg = TrialConfig(n=n, k=k, trials=cfg.trials, seed=seed, threads=cfg.threads)
                for cid in cases:
                    r = run_case(cid, trial_cfg, timing=True)
                    rows.append({"n": n, "k": k, "seed": seed, "case": cid, "status": r.status,
                                 "worst_gap": r.worst_gap, "millis": r.millis})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=list(SweepConfig.dims))
    ap.add_argument("--seeds", type=int, nargs="+", default=list(SweepConfig.seeds))
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--threads", type=int, default=SweepConfig.threads)
    ap.add_argument("--cases", nargs="*", default=[])
    ap.add_argument("--out", help="write rows as JSON")
    args = ap.parse_args()
    cfg = SweepConfig(tuple(args.dims), tuple(args.seeds), args.trials, args.threads, tuple(args.cases))

    start = time.perf_counter()
    rows = sweep(cfg)
    failed = [r for r in rows if r["status"] == "FAIL"]
    for r in failed:
        print(f"FAIL {r['case']:<18} n={r['n']} k={r['k']} seed={r['seed']} worst_gap={r['worst_gap']:.3e}")
    worst = min((r for r in rows if r["worst_gap"] is not None), key=lambda r: r["worst_gap"])
    print(f"{len(rows) - len(failed)}/{len(rows)} runs passed in {time.perf_counter() - start:.1f}s; "
          f"worst gap {worst['worst_gap']:.3e} ({worst['case']}, n={worst['n']}, k={worst['k']})")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
