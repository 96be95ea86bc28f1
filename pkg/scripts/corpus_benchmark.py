"""Draw and verify a random corpus for each drawing mode; print one summary row per mode.

    python3 scripts/corpus_benchmark.py --count 100 --modes rac3 deg4 deg7
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass, field
from math import ceil

from racdraw import generate
from racdraw.onebend_diagonal import draw_1bend_diagonal
from racdraw.onebend_split import draw_1bend_deg4
from racdraw.rac3 import rac3_constraints, rac3_layout
from racdraw.twobend import draw_2bend_deg7
from racdraw.verify import Constraints, verify


@dataclass
class BenchConfig:
    count: int = 100
    seed: int = 0
    modes: list[str] = field(default_factory=lambda: ["rac3", "deg4", "deg4diag", "deg7"])
    n_lo: int = 10
    n_hi: int = 200


def _rac3(gi):
    res = rac3_layout(gi.graph, gi.coloring)
    return res.drawing, rac3_constraints(gi.graph, gi.coloring, res)


def _deg4(gi):
    return draw_1bend_deg4(gi.graph), Constraints(max_bends=1)


def _deg4diag(gi):
    m = len(gi.graph.real_edges())
    return draw_1bend_diagonal(gi.graph), Constraints(max_bends=1, min_straight=ceil(m / 8))


def _deg7(gi):
    return draw_2bend_deg7(gi.graph, gi.coloring.matching(gi.coloring.k - 1)), Constraints(max_bends=2)


MODES = {
    "rac3": ("cubic3col({})", True, _rac3),
    "deg4": ("reg4({})", False, _deg4),
    "deg4diag": ("reg4({})", False, _deg4diag),
    "deg7": ("reg7col({})", True, _deg7),
}


def run(cfg: BenchConfig) -> list[dict]:
    rows = []
    for mode in cfg.modes:
        spec, even, draw = MODES[mode]
        rng = random.Random(cfg.seed)
        passed, worst_area, t_draw, t_verify = 0, 0.0, 0.0, 0.0
        for i in range(cfg.count):
            n = rng.randint(cfg.n_lo, cfg.n_hi)
            n += n % 2 if even else 0
            gi = generate(spec.format(n), cfg.seed + i)
            t0 = time.perf_counter()
            d, cons = draw(gi)
            t1 = time.perf_counter()
            rep = verify(gi.graph, d, cons)
            t_verify += time.perf_counter() - t1
            t_draw += t1 - t0
            passed += rep.ok
            w, h = rep.bounding_box
            worst_area = max(worst_area, max(w, h) / gi.graph.n)
        rows.append(
            dict(mode=mode, graphs=cfg.count, passed=passed, max_side_over_n=round(worst_area, 3),
                 draw_s=round(t_draw, 2), verify_s=round(t_verify, 2))
        )
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=BenchConfig.count)
    p.add_argument("--seed", type=int, default=BenchConfig.seed)
    p.add_argument("--modes", nargs="+", choices=sorted(MODES), default=BenchConfig().modes)
    a = p.parse_args()
    rows = run(BenchConfig(count=a.count, seed=a.seed, modes=a.modes))
    keys = list(rows[0])
    print("  ".join(f"{k:>15}" for k in keys))
    for r in rows:
        print("  ".join(f"{r[k]!s:>15}" for k in keys))


if __name__ == "__main__":
    main()
