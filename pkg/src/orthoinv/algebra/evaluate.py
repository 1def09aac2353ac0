"""Vectorized evaluation of polynomials over GF(2^k) at many points.

A polynomial is compiled once into an exponent matrix; evaluation then uses
the field's log/exp tables so that a batch of points costs a handful of
numpy operations.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np

from .field import FieldDesc, embed
from .poly import IntegerRing, Polynomial


class CompiledPoly:
    def __init__(self, p: Polynomial, field: FieldDesc, variables: Sequence[int] | None = None):
        if isinstance(p.ring, IntegerRing):
            coefs = {m: c & 1 for m, c in p.terms.items() if c & 1}
        elif p.ring == field:
            coefs = dict(p.terms)
        else:
            coefs = {m: embed(p.ring, field, c) for m, c in p.terms.items()}
        self.field = field
        if variables is None:
            variables = sorted({v for m in coefs for v, _ in m})
        self.variables = list(variables)
        index = {v: j for j, v in enumerate(self.variables)}
        monos = list(coefs)
        exps = np.zeros((len(monos), len(self.variables)), dtype=np.int64)
        for r, m in enumerate(monos):
            for v, e in m:
                exps[r, index[v]] = e
        self.exps = exps
        self.used = (exps > 0).astype(np.int64)
        self.coef_log = field.log_arr[np.array([coefs[m] for m in monos], dtype=np.int64)] \
            if monos else np.zeros(0, dtype=np.int64)

    def __call__(self, values: np.ndarray) -> np.ndarray:
        """values: array (len(variables), P) of field elements; returns shape (P,)."""
        f = self.field
        values = np.asarray(values, dtype=np.int64)
        npts = values.shape[1] if values.ndim == 2 else 1
        if self.exps.shape[0] == 0:
            return np.zeros(npts, dtype=np.int64)
        q1 = f.order - 1
        logs = f.log_arr[values]
        zero = (values == 0).astype(np.int64)
        total = (self.exps @ logs + self.coef_log[:, None]) % q1 if q1 > 1 else \
            np.zeros((self.exps.shape[0], npts), dtype=np.int64)
        vals = f.exp_arr[total]
        vals[(self.used @ zero) > 0] = 0
        return np.bitwise_xor.reduce(vals, axis=0)

    def monomial_values(self, values: np.ndarray) -> np.ndarray:
        """Per-term values (coefficients included), shape (terms, P)."""
        f = self.field
        values = np.asarray(values, dtype=np.int64)
        q1 = f.order - 1
        logs = f.log_arr[values]
        zero = (values == 0).astype(np.int64)
        total = (self.exps @ logs + self.coef_log[:, None]) % q1 if q1 > 1 else \
            np.zeros((self.exps.shape[0], values.shape[1]), dtype=np.int64)
        vals = f.exp_arr[total]
        vals[(self.used @ zero) > 0] = 0
        return vals


def evaluate_many(p: Polynomial, field: FieldDesc, points: Mapping[int, np.ndarray],
                  chunk: int = 256) -> np.ndarray:
    """Evaluate p at the points given as variable -> array of values."""
    cp = CompiledPoly(p, field)
    npts = len(next(iter(points.values()))) if points else 1
    out = np.zeros(npts, dtype=np.int64)
    for lo in range(0, npts, chunk):
        hi = min(npts, lo + chunk)
        vals = np.array([np.asarray(points[v])[lo:hi] for v in cp.variables], dtype=np.int64) \
            if cp.variables else np.zeros((0, hi - lo), dtype=np.int64)
        out[lo:hi] = cp(vals) if cp.variables else cp(np.zeros((0, hi - lo), dtype=np.int64))
    return out
