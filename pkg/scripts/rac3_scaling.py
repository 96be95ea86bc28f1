"""Wall time of the straight-line cubic drawer as n doubles.

    python3 scripts/rac3_scaling.py --sizes 12500 25000 50000 100000
"""

from __future__ import annotations

import argparse
import gc
import time
from dataclasses import dataclass, field

from racdraw import generate
from racdraw.rac3 import draw_rac3


@dataclass
class ScalingConfig:
    sizes: list[int] = field(default_factory=lambda: [12_500, 25_000, 50_000, 100_000])
    repeats: int = 5
    seed: int = 1


def best_time(f, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter()
            f()
            best = min(best, time.perf_counter() - t0)
        finally:
            gc.enable()
    return best


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=ScalingConfig().sizes)
    p.add_argument("--repeats", type=int, default=ScalingConfig.repeats)
    a = p.parse_args()
    cfg = ScalingConfig(sizes=a.sizes, repeats=a.repeats)
    prev = None
    print(f"{'n':>8}  {'seconds':>8}  {'ratio':>6}")
    for n in cfg.sizes:
        gi = generate(f"cubic3col({n})", cfg.seed)
        t = best_time(lambda: draw_rac3(gi.graph, gi.coloring), cfg.repeats)
        ratio = f"{t / prev:.2f}" if prev else "-"
        print(f"{n:>8}  {t:>8.3f}  {ratio:>6}")
        prev = t


if __name__ == "__main__":
    main()
