"""Realize random Gram data and read it back; count how often a quadratic
extension of the field was needed."""

import argparse
from dataclasses import dataclass, fields

import numpy as np

from orthoinv.algebra import make_field
from orthoinv.invspace import dense
from orthoinv.witt import GramData, fingerprint, realize_gram


@dataclass
class Config:
    k: int = 8
    trials: int = 100
    max_n: int = 6
    seed: int = 0


def random_gram(m: int, f, rng) -> GramData:
    beta = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            beta[i][j] = beta[j][i] = int(rng.integers(0, f.order))
    return GramData(m, beta, [int(a) for a in rng.integers(0, f.order, size=m)], f)


def main(cfg: Config) -> None:
    f = make_field(cfg.k)
    rng = np.random.default_rng(cfg.seed)
    print(f"{'n':>2} {'m':>2} {'ok':>5} {'ext':>5} {'skip':>5}")
    for n in range(1, cfg.max_n + 1):
        for m in range(1, n + 1):
            ok = ext = skip = 0
            for _ in range(cfg.trials):
                g = random_gram(m, f, rng)
                if dense.rank(g.beta, f) > 2 * (n // 2):
                    skip += 1
                    continue
                v = realize_gram(g, n)
                gg = g.change_field(v.field) if v.extended else g
                back = fingerprint(v)
                ok += back.beta == gg.beta and back.qvals == gg.qvals
                ext += v.extended
            print(f"{n:>2} {m:>2} {ok:>5} {ext:>5} {skip:>5}")


def parse(argv=None) -> Config:
    p = argparse.ArgumentParser(description=__doc__)
    for fl in fields(Config):
        p.add_argument(f"--{fl.name}", type=type(fl.default), default=fl.default)
    return Config(**vars(p.parse_args(argv)))


if __name__ == "__main__":
    main(parse())
