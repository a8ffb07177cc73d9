"""Boolean linear programs, genotypes, and the brute-force offspring oracle.

A Boolean linear program is ``opt { c x : rows, x in {0,1}^n }`` where each row
is a sparse integer combination compared to ``b`` with ``<=``, ``>=`` or ``=``.
All arithmetic is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DiffSetTooLarge,
    DuplicateColumn,
    IndexOutOfRange,
    InfeasibleParents,
    LengthMismatch,
    OverflowRisk,
    ValidationError,
)

LE, GE, EQ = "le", "ge", "eq"
MAX, MIN = "max", "min"
ROW_SENSES = (LE, GE, EQ)
OBJ_SENSES = (MAX, MIN)

# int64 headroom kept for the vectorised oracle
EXACT_LIMIT = 2**62

DEFAULT_ORACLE_CAP = 24
_CHUNK_BITS = 16

Genotype = tuple  # tuple[int, ...] of 0/1


def as_genotype(bits, n: int | None = None) -> Genotype:
    """Normalise a bit string, sequence or array into a tuple of 0/1 ints."""
    if isinstance(bits, str):
        s = bits.strip()
        if any(ch not in "01" for ch in s):
            raise ValidationError(f"genotype string must contain only 0/1, got {bits!r}")
        out = tuple(int(ch) for ch in s)
    else:
        out = tuple(int(v) for v in bits)
        if any(v not in (0, 1) for v in out):
            raise ValidationError("genotype entries must be 0 or 1")
    if n is not None and len(out) != n:
        raise LengthMismatch(f"genotype has length {len(out)}, expected {n}")
    return out


def bits_str(x: Sequence[int]) -> str:
    return "".join("1" if v else "0" for v in x)


@dataclass(frozen=True)
class Row:
    """One sparse constraint ``sum(a * x[col]) <sense> b``."""

    coeffs: tuple
    b: int
    sense: str = LE

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple((int(j), int(a)) for j, a in self.coeffs))
        object.__setattr__(self, "b", int(self.b))
        if self.sense not in ROW_SENSES:
            raise ValidationError(f"unknown row sense {self.sense!r}")

    @property
    def support(self) -> tuple:
        """Columns with a non-zero coefficient (the row's N_i)."""
        return tuple(j for j, a in self.coeffs if a != 0)

    def activity(self, x: Sequence[int]) -> int:
        return sum(a for j, a in self.coeffs if x[j])

    def holds(self, lhs: int) -> bool:
        if self.sense == LE:
            return lhs <= self.b
        if self.sense == GE:
            return lhs >= self.b
        return lhs == self.b


def _as_row(r) -> Row:
    if isinstance(r, Row):
        return r
    if isinstance(r, dict):
        return Row(r["coeffs"], r["b"], r.get("sense", LE))
    return Row(*r)


@dataclass(frozen=True)
class BlpInstance:
    """Objective vector ``c``, sparse rows, and the optimisation sense."""

    c: tuple
    rows: tuple = ()
    sense: str = MAX

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        object.__setattr__(self, "rows", tuple(_as_row(r) for r in self.rows))
        validate_instance(self)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.rows)

    def dense(self) -> np.ndarray:
        A = np.zeros((self.m, self.n), dtype=np.int64)
        for i, row in enumerate(self.rows):
            for j, a in row.coeffs:
                A[i, j] = a
        return A


def validate_instance(inst: BlpInstance) -> None:
    if inst.sense not in OBJ_SENSES:
        raise ValidationError(f"unknown objective sense {inst.sense!r}")
    n = len(inst.c)
    total = 4 * sum(abs(v) for v in inst.c)
    for i, row in enumerate(inst.rows):
        seen = set()
        for j, a in row.coeffs:
            if not 0 <= j < n:
                raise IndexOutOfRange(f"row {i} references column {j}, valid range is [0, {n})")
            if j in seen:
                raise DuplicateColumn(f"row {i} lists column {j} twice")
            seen.add(j)
            total += abs(a)
        if abs(row.b) >= EXACT_LIMIT:
            raise OverflowRisk(f"row {i} right-hand side {row.b} is outside the exact range")
    if total >= EXACT_LIMIT:
        raise OverflowRisk(f"coefficient magnitude {total} exceeds the exact range 2^62")


def _check_len(inst: BlpInstance, x) -> None:
    if len(x) != inst.n:
        raise LengthMismatch(f"genotype has length {len(x)}, instance has n={inst.n}")


def objective(inst: BlpInstance, x: Sequence[int]) -> int:
    _check_len(inst, x)
    return sum(cj for cj, xj in zip(inst.c, x) if xj)


def feasible(inst: BlpInstance, x: Sequence[int]) -> bool:
    _check_len(inst, x)
    return all(row.holds(row.activity(x)) for row in inst.rows)


def violated_rows(inst: BlpInstance, x: Sequence[int]) -> list:
    _check_len(inst, x)
    return [i for i, row in enumerate(inst.rows) if not row.holds(row.activity(x))]


def better(sense: str, a: int, b: int) -> bool:
    """True if value ``a`` is strictly better than ``b`` under ``sense``."""
    return a > b if sense == MAX else a < b


@dataclass(frozen=True)
class DiffSet:
    indices: tuple

    @property
    def d(self) -> int:
        return len(self.indices)

    def __contains__(self, j) -> bool:
        return j in set(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


def diff_set(p1: Sequence[int], p2: Sequence[int]) -> DiffSet:
    if len(p1) != len(p2):
        raise LengthMismatch(f"parents have lengths {len(p1)} and {len(p2)}")
    return DiffSet(tuple(j for j, (a, b) in enumerate(zip(p1, p2)) if a != b))


def transmits(x: Sequence[int], p1: Sequence[int], p2: Sequence[int]) -> bool:
    """Gene transmission: every bit of ``x`` comes from one of the parents."""
    return len(x) == len(p1) == len(p2) and all(
        xj == a or xj == b for xj, a, b in zip(x, p1, p2)
    )


@dataclass(frozen=True)
class CrossoverResult:
    offspring: Genotype
    value: int
    trace: tuple = ()
    parents: tuple = field(default=(), compare=False)


def check_parents(inst: BlpInstance, p1, p2) -> tuple:
    p1 = as_genotype(p1, inst.n)
    p2 = as_genotype(p2, inst.n)
    for name, p in (("p1", p1), ("p2", p2)):
        bad = violated_rows(inst, p)
        if bad:
            raise InfeasibleParents(f"parent {name} violates row(s) {bad[:5]}")
    return p1, p2


def brute_force_ogtc(
    inst: BlpInstance, p1, p2, cap: int = DEFAULT_ORACLE_CAP
) -> CrossoverResult:
    """Enumerate every gene-transmitting offspring and return the best feasible one.

    Ties go to the lexicographically smallest bit vector.
    """
    p1, p2 = check_parents(inst, p1, p2)
    D = diff_set(p1, p2).indices
    d = len(D)
    if d > cap:
        raise DiffSetTooLarge(f"|D| = {d} exceeds the oracle cap {cap}")

    base = np.array(p1, dtype=np.int64)
    base[list(D)] = 0
    c = np.array(inst.c, dtype=np.int64)
    A = inst.dense()
    c_D = c[list(D)]
    A_D = A[:, list(D)]
    base_val = int(c @ base) if inst.n else 0
    base_act = A @ base if inst.m else np.zeros(0, dtype=np.int64)
    b = np.array([r.b for r in inst.rows], dtype=np.int64)
    senses = np.array([r.sense for r in inst.rows])
    le, ge, eq = senses == LE, senses == GE, senses == EQ
    # D[0] is the most significant bit so numeric order of k is lexicographic order
    shifts = np.arange(d - 1, -1, -1, dtype=np.int64)

    best_val = None
    best_k = None
    total = 1 << d
    step = 1 << min(d, _CHUNK_BITS)
    for start in range(0, total, step):
        ks = np.arange(start, min(start + step, total), dtype=np.int64)
        bits = (ks[:, None] >> shifts) & 1
        vals = bits @ c_D + base_val
        act = bits @ A_D.T + base_act
        ok = np.ones(len(ks), dtype=bool)
        if inst.m:
            ok &= np.all((act <= b) | ~le, axis=1)
            ok &= np.all((act >= b) | ~ge, axis=1)
            ok &= np.all((act == b) | ~eq, axis=1)
        if not ok.any():
            continue
        idx = np.nonzero(ok)[0]
        v = vals[idx]
        pos = int(np.argmax(v) if inst.sense == MAX else np.argmin(v))
        cand_val = int(v[pos])
        if best_val is None or better(inst.sense, cand_val, best_val):
            best_val, best_k = cand_val, int(ks[idx[pos]])

    x = list(p1)
    for i, j in enumerate(D):
        x[j] = (best_k >> (d - 1 - i)) & 1
    x = tuple(x)
    return CrossoverResult(x, objective(inst, x), ("oracle:enumerate",), (p1, p2))
