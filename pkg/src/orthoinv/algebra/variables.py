"""Variable identifiers.

Internally every variable is an int code whose natural order is the
serialization order: coordinates sort by (vector index, kind X<Y<Z,
coordinate index); abstract Gram symbols come next; formal parameters last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

X, Y, Z = 0, 1, 2
KIND_NAMES = {X: "X", Y: "Y", Z: "Z"}

_VEC_SHIFT = 20
_KIND_SHIFT = 16
_GRAM_BASE = 1 << 50
_PARAM_BASE = 1 << 60
_PARAM_NAME_BYTES = 8

# abstract Gram symbols (relation polynomials)
G_Q, G_B, G_D, G_DELTA = 0, 1, 2, 3


def coord(kind: int, t: int, i: int) -> int:
    if i < 1 or (kind != Z and t < 1):
        raise ValueError(f"bad coordinate ({kind}, {t}, {i})")
    if kind == Z:
        t = 0
    return (i << _VEC_SHIFT) | (kind << _KIND_SHIFT) | t


def xv(t: int, i: int) -> int:
    return coord(X, t, i)


def yv(t: int, i: int) -> int:
    return coord(Y, t, i)


def zv(i: int) -> int:
    return coord(Z, 0, i)


def param(name: str) -> int:
    raw = name.encode("ascii")
    if not raw or len(raw) > _PARAM_NAME_BYTES or not name.isalnum():
        raise ValueError(f"parameter name must be 1-{_PARAM_NAME_BYTES} alphanumerics: {name!r}")
    return _PARAM_BASE + int.from_bytes(raw.ljust(_PARAM_NAME_BYTES, b"\0"), "big")


def gram_q(i: int) -> int:
    return _GRAM_BASE + (i << _VEC_SHIFT) + (G_Q << _KIND_SHIFT)


def gram_b(i: int, j: int) -> int:
    if i == j:
        raise ValueError("B(i,i) is not an abstract variable")
    i, j = min(i, j), max(i, j)
    return _GRAM_BASE + (i << _VEC_SHIFT) + (G_B << _KIND_SHIFT) + j


GRAM_D = _GRAM_BASE + (1 << 45) + G_D
GRAM_DELTA = _GRAM_BASE + (1 << 45) + G_DELTA


def is_param(code: int) -> bool:
    return code >= _PARAM_BASE


def is_gram(code: int) -> bool:
    return _GRAM_BASE <= code < _PARAM_BASE


def is_coord(code: int) -> bool:
    return code < _GRAM_BASE


def vector_of(code: int) -> int:
    return code >> _VEC_SHIFT


def kind_of(code: int) -> int:
    return (code >> _KIND_SHIFT) & 0xF


def index_of(code: int) -> int:
    return code & 0xFFFF


@dataclass(frozen=True, order=True)
class VariableId:
    """Readable form of a variable code.

    kind is one of "X", "Y", "Z", "Param", "Q", "B", "D", "Delta".
    """

    kind: str
    t: int = 0
    i: int = 0
    name: str = ""

    @property
    def code(self) -> int:
        if self.kind == "X":
            return xv(self.t, self.i)
        if self.kind == "Y":
            return yv(self.t, self.i)
        if self.kind == "Z":
            return zv(self.i)
        if self.kind == "Param":
            return param(self.name)
        if self.kind == "Q":
            return gram_q(self.i)
        if self.kind == "B":
            return gram_b(self.t, self.i)
        if self.kind == "D":
            return GRAM_D
        if self.kind == "Delta":
            return GRAM_DELTA
        raise ValueError(self.kind)

    def __str__(self) -> str:
        return var_name(self.code)


def decode(code: int) -> VariableId:
    if is_param(code):
        raw = (code - _PARAM_BASE).to_bytes(_PARAM_NAME_BYTES, "big").rstrip(b"\0")
        return VariableId("Param", name=raw.decode("ascii"))
    if is_gram(code):
        if code == GRAM_D:
            return VariableId("D")
        if code == GRAM_DELTA:
            return VariableId("Delta")
        c = code - _GRAM_BASE
        i, kind, j = c >> _VEC_SHIFT, (c >> _KIND_SHIFT) & 0xF, c & 0xFFFF
        if kind == G_Q:
            return VariableId("Q", i=i)
        return VariableId("B", t=i, i=j)
    kind = kind_of(code)
    return VariableId(KIND_NAMES[kind], t=index_of(code), i=vector_of(code))


def var_name(code: int) -> str:
    v = decode(code)
    if v.kind == "X":
        return f"x{v.t}_{v.i}"
    if v.kind == "Y":
        return f"y{v.t}_{v.i}"
    if v.kind == "Z":
        return f"z_{v.i}"
    if v.kind == "Param":
        return f"c{v.name}"
    if v.kind == "Q":
        return f"Q_{v.i}"
    if v.kind == "B":
        return f"B_{v.t}_{v.i}"
    if v.kind == "D":
        return "D"
    return "DELTA"


_VAR_RE = re.compile(
    r"x(\d+)_(\d+)|y(\d+)_(\d+)|z_(\d+)|Q_(\d+)|B_(\d+)_(\d+)|DELTA|D|c([A-Za-z0-9]+)"
)


def parse_var(s: str) -> int:
    m = _VAR_RE.fullmatch(s)
    if not m:
        raise ValueError(f"unknown variable {s!r}")
    g = m.groups()
    if g[0]:
        return xv(int(g[0]), int(g[1]))
    if g[2]:
        return yv(int(g[2]), int(g[3]))
    if g[4]:
        return zv(int(g[4]))
    if g[5]:
        return gram_q(int(g[5]))
    if g[6]:
        return gram_b(int(g[6]), int(g[7]))
    if s == "DELTA":
        return GRAM_DELTA
    if s == "D":
        return GRAM_D
    return param(g[8])


def coordinate_codes(n: int, i: int) -> list[int]:
    """Coordinates of vector i in the order x_1..x_nu, y_1..y_nu[, z]."""
    nu = n // 2
    out = [xv(t, i) for t in range(1, nu + 1)] + [yv(t, i) for t in range(1, nu + 1)]
    if n % 2:
        out.append(zv(i))
    return out


def coordinate_position(code: int, n: int) -> int:
    """Row index of a coordinate variable in the n-dimensional column vector."""
    nu = n // 2
    kind, t = kind_of(code), index_of(code)
    if kind == X and 1 <= t <= nu:
        return t - 1
    if kind == Y and 1 <= t <= nu:
        return nu + t - 1
    if kind == Z and n % 2:
        return 2 * nu
    raise ValueError(f"{var_name(code)} is not a coordinate of k^{n}")
