"""Build the type-matrix invariant f and certify it for O(2nu), then break it with
the symplectic transvection x1 -> x1 + y1."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass, fields

from orthoinv.algebra import format_poly, type_of
from orthoinv.groups import GroupAction, check_action, invariance_check
from orthoinv.invariants import f_even, f_even_params, f_even_term_count


@dataclass
class Config:
    nu: int = 2
    t: int = 2
    mode: str = "symbolic"


def transvection(n: int) -> GroupAction:
    nu = n // 2
    M = [[int(r == c) for c in range(n)] for r in range(n)]
    M[0][nu] = 1
    return GroupAction.from_matrix(M, name="x1 -> x1 + y1")


def main(cfg: Config) -> None:
    m, low, high = f_even_params(cfg.nu, cfg.t)
    n = 2 * cfg.nu
    print(f"nu={cfg.nu} t={cfg.t}: {m} vectors, rows permute ({low}, {high}, ...)")
    t0 = time.perf_counter()
    f = f_even(cfg.nu, cfg.t)
    print(f"{len(f)} terms (closed form {f_even_term_count(cfg.nu, cfg.t)}) in {time.perf_counter() - t0:.1f} s")
    types = Counter()
    for mono in f.terms:
        ty = type_of(mono, cfg.nu)
        types[ty.sigma, ty.tau] += 1
    for (s, tau), c in sorted(types.items()):
        print(f"  type {s} / {tau}: {c}")
    t0 = time.perf_counter()
    cert = invariance_check(f, f"O{n}", mode=cfg.mode)
    print(f"O({n}) {cert.mode}: {cert.status} in {time.perf_counter() - t0:.1f} s")
    wit = check_action(f, transvection(n))
    if wit is None:
        print("transvection fixes f")
    else:
        print(f"transvection moves f; witness monomial {wit['monomial']}")


def parse(argv=None) -> Config:
    p = argparse.ArgumentParser(description=__doc__)
    for fl in fields(Config):
        p.add_argument(f"--{fl.name}", type=type(fl.default), default=fl.default)
    return Config(**vars(p.parse_args(argv)))


if __name__ == "__main__":
    main(parse())
