"""Dimensions of multilinear O(2) and SO(2) invariant spaces, next to the number
of indecomposables found among the B^(I|J)."""

import argparse
from dataclasses import dataclass

from orthoinv.invspace import invariant_space, is_decomposable
from orthoinv.invariants import b_IJ


@dataclass
class Config:
    max_m: int = 8
    decompose: bool = True


def main(cfg: Config) -> None:
    print(f"{'m':>3} {'O(2)':>6} {'SO(2)':>6} {'columns':>8}")
    for m in range(2, cfg.max_m + 1, 2):
        alpha = (1,) * m
        o = invariant_space(2, "O2", alpha)
        so = invariant_space(2, "SO2", alpha)
        print(f"{m:>3} {o.dimension:>6} {so.dimension:>6} {o.columns:>8}")
    if cfg.decompose:
        for s in range(1, cfg.max_m // 2 + 1):
            I, J = tuple(range(1, s + 1)), tuple(range(s + 1, 2 * s + 1))
            dec = is_decomposable(b_IJ(I, J), "O2", 2)
            print(f"B^({','.join(map(str, I))}|{','.join(map(str, J))}): "
                  f"{'decomposable' if dec else 'indecomposable'} ({dec.products_checked} products)")


def parse(argv=None) -> Config:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max_m", type=int, default=Config.max_m)
    p.add_argument("--no-decompose", dest="decompose", action="store_false")
    return Config(**vars(p.parse_args(argv)))


if __name__ == "__main__":
    main(parse())
