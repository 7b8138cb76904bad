"""Sparse integer polynomials with hard per-variable exponent caps.

Monomials are packed into a single integer key, variable 0 in the most
significant field, so that numeric key order is the lexicographic order of
exponent vectors.  Keys live in a sorted ``uint64`` array whenever the packed
width fits in 64 bits and fall back to an object array of Python ints
otherwise.  Coefficients are ``int64`` and every merge is overflow-checked.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

INT64_MAX = int(np.iinfo(np.int64).max)
INT64_MIN = int(np.iinfo(np.int64).min)
MAX_EXPONENT = 63
NAIVE_TERM_LIMIT = 22


class CoefficientOverflowError(ArithmeticError):
    """A coefficient left the signed 64-bit range."""


class TermLimitError(ValueError):
    """Too many factors for the unpruned reference expansion."""


def _check_caps(num_vars: int, caps: Sequence[int]) -> tuple[int, ...]:
    caps = tuple(int(c) for c in caps)
    if len(caps) != num_vars:
        raise ValueError(f"expected {num_vars} caps, got {len(caps)}")
    for c in caps:
        if c < 0 or c > MAX_EXPONENT:
            raise ValueError(f"cap {c} outside 0..{MAX_EXPONENT}")
    return caps


class _Layout:
    """Bit layout of packed exponent keys for a given cap vector."""

    __slots__ = ("num_vars", "bits", "mask", "shifts", "wide")

    def __init__(self, num_vars: int, caps: Sequence[int]):
        self.num_vars = num_vars
        self.bits = max(1, max(caps, default=0).bit_length())
        self.mask = (1 << self.bits) - 1
        self.shifts = tuple(self.bits * (num_vars - 1 - i) for i in range(num_vars))
        self.wide = self.bits * num_vars > 64

    @property
    def dtype(self):
        return object if self.wide else np.uint64

    def unit(self, var: int):
        u = 1 << self.shifts[var]
        return u if self.wide else np.uint64(u)

    def field(self, keys: np.ndarray, var: int) -> np.ndarray:
        if self.wide:
            s = self.shifts[var]
            return np.array([(k >> s) & self.mask for k in keys], dtype=np.int64)
        return ((keys >> np.uint64(self.shifts[var])) & np.uint64(self.mask)).astype(np.int64)

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        for e, s in zip(exps, self.shifts):
            key |= int(e) << s
        return key

    def unpack_all(self, keys: np.ndarray) -> np.ndarray:
        out = np.zeros((len(keys), self.num_vars), dtype=np.int64)
        for i in range(self.num_vars):
            out[:, i] = self.field(keys, i)
        return out

    def pack_all(self, exps: np.ndarray) -> np.ndarray:
        if self.wide:
            return np.array([self.pack(row) for row in exps.tolist()], dtype=object)
        keys = np.zeros(len(exps), dtype=np.uint64)
        for i, s in enumerate(self.shifts):
            keys |= exps[:, i].astype(np.uint64) << np.uint64(s)
        return keys


class CappedPolynomial:
    """Immutable sparse polynomial over the integers with exponent caps.

    Invariants: keys are strictly increasing, no stored coefficient is zero,
    and every stored exponent is at most its variable's cap.
    """

    __slots__ = ("num_vars", "caps", "_layout", "_keys", "_coeffs")

    def __init__(self, num_vars: int, caps: Sequence[int], keys, coeffs, *, _layout=None):
        self.num_vars = int(num_vars)
        self.caps = _check_caps(self.num_vars, caps)
        self._layout = _layout or _Layout(self.num_vars, self.caps)
        self._keys = keys
        self._coeffs = coeffs
        self._keys.flags.writeable = False
        self._coeffs.flags.writeable = False

    @classmethod
    def from_dict(
        cls, num_vars: int, caps: Sequence[int], terms: Mapping[Sequence[int], int]
    ) -> "CappedPolynomial":
        """Build from ``{exponents: coefficient}``, dropping zeros and cap violations."""
        caps = _check_caps(num_vars, caps)
        layout = _Layout(num_vars, caps)
        merged: dict[int, int] = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ValueError("exponent vector has wrong length")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if any(e > cap for e, cap in zip(exps, caps)):
                continue
            key = layout.pack(exps)
            merged[key] = merged.get(key, 0) + int(c)
        items = sorted((k, c) for k, c in merged.items() if c != 0)
        for _, c in items:
            if not INT64_MIN <= c <= INT64_MAX:
                raise CoefficientOverflowError(f"coefficient {c} exceeds int64")
        keys = np.array([k for k, _ in items], dtype=layout.dtype)
        coeffs = np.array([c for _, c in items], dtype=np.int64)
        return cls(num_vars, caps, keys, coeffs, _layout=layout)

    def __len__(self) -> int:
        return len(self._keys)

    def __bool__(self) -> bool:
        return len(self._keys) > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, CappedPolynomial):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.caps == other.caps
            and self.surviving_monomials() == other.surviving_monomials()
        )

    def __repr__(self) -> str:
        return f"CappedPolynomial(num_vars={self.num_vars}, caps={self.caps}, terms={len(self)})"

    def exponent_matrix(self) -> np.ndarray:
        """Exponents as an ``(len, num_vars)`` int64 array in canonical order."""
        return self._layout.unpack_all(self._keys)

    @property
    def coefficients(self) -> np.ndarray:
        return self._coeffs

    def coefficient(self, exps: Sequence[int]) -> int:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.num_vars:
            raise ValueError(f"exponent vector must have length {self.num_vars}")
        if any(e < 0 or e > c for e, c in zip(exps, self.caps)):
            return 0
        key = self._layout.pack(exps)
        if self._layout.wide:
            key_arr = key
        else:
            key_arr = np.uint64(key)
        i = int(np.searchsorted(self._keys, key_arr))
        if i < len(self._keys) and int(self._keys[i]) == key:
            return int(self._coeffs[i])
        return 0

    def surviving_monomials(self) -> list[tuple[tuple[int, ...], int]]:
        """All nonzero ``(exponents, coefficient)`` pairs in lexicographic order."""
        exps = self.exponent_matrix().tolist()
        return [(tuple(e), int(c)) for e, c in zip(exps, self._coeffs.tolist())]

    def to_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.surviving_monomials())

    def total_degrees(self) -> np.ndarray:
        return self.exponent_matrix().sum(axis=1)

    def dump(self) -> str:
        """Debug listing: one ``<coeff> <e1> ... <en>`` line per monomial."""
        lines = [
            " ".join([str(c), *map(str, e)]) for e, c in self.surviving_monomials()
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def with_caps(self, caps: Sequence[int]) -> "CappedPolynomial":
        """Re-cap: drop monomials above the new caps and repack the keys."""
        caps = _check_caps(self.num_vars, caps)
        if caps == self.caps:
            return self
        exps = self.exponent_matrix()
        keep = np.all(exps <= np.asarray(caps, dtype=np.int64), axis=1) if len(exps) else np.zeros(0, bool)
        layout = _Layout(self.num_vars, caps)
        keys = layout.pack_all(exps[keep])
        return CappedPolynomial(self.num_vars, caps, keys, self._coeffs[keep].copy(), _layout=layout)

    def drop_below(self, var: int, minimum: int) -> "CappedPolynomial":
        """Discard monomials whose exponent of ``var`` is below ``minimum``."""
        if minimum <= 0 or not len(self):
            return self
        keep = self._layout.field(self._keys, var) >= minimum
        if keep.all():
            return self
        return CappedPolynomial(
            self.num_vars, self.caps, self._keys[keep].copy(), self._coeffs[keep].copy(),
            _layout=self._layout,
        )


def poly_one(num_vars: int, caps: Sequence[int]) -> CappedPolynomial:
    caps = _check_caps(num_vars, caps)
    layout = _Layout(num_vars, caps)
    return CappedPolynomial(
        num_vars, caps, np.zeros(1, dtype=layout.dtype) if not layout.wide else np.array([0], dtype=object),
        np.ones(1, dtype=np.int64), _layout=layout,
    )


def _check_term(term: Sequence[int], num_vars: int) -> tuple[int, int]:
    a, b = int(term[0]), int(term[1])
    if a == b:
        raise ValueError(f"binomial ({a}, {b}) needs two distinct variables")
    if not (0 <= a < num_vars and 0 <= b < num_vars):
        raise IndexError(f"binomial ({a}, {b}) out of range for {num_vars} variables")
    return a, b


def multiply_binomial(p: CappedPolynomial, term: Sequence[int]) -> CappedPolynomial:
    """Return ``(x_a - x_b) * p`` with cap-violating monomials pruned."""
    a, b = _check_term(term, p.num_vars)
    lay = p._layout
    keys, coeffs = p._keys, p._coeffs
    if not len(keys):
        return p

    keep_a = lay.field(keys, a) < p.caps[a]
    keep_b = lay.field(keys, b) < p.caps[b]
    cb = coeffs[keep_b]
    if cb.size and cb.min() == INT64_MIN:
        raise CoefficientOverflowError("cannot negate the minimum int64 coefficient")

    new_keys = np.concatenate([keys[keep_a] + lay.unit(a), keys[keep_b] + lay.unit(b)])
    new_coeffs = np.concatenate([coeffs[keep_a], -cb])
    if not new_keys.size:
        return CappedPolynomial(p.num_vars, p.caps, new_keys, new_coeffs, _layout=lay)

    # Both halves are already sorted, so a stable sort is a linear merge.
    order = np.argsort(new_keys, kind="stable")
    new_keys = new_keys[order]
    new_coeffs = new_coeffs[order]

    starts = np.flatnonzero(np.concatenate(([True], new_keys[1:] != new_keys[:-1])))
    sums = np.add.reduceat(new_coeffs, starts)
    # Groups hold at most two entries (one per half); check those additions.
    sizes = np.diff(np.append(starts, len(new_keys)))
    pair = sizes == 2
    if pair.any():
        x = new_coeffs[starts[pair]]
        y = new_coeffs[starts[pair] + 1]
        r = sums[pair]
        if np.any(((x ^ r) & (y ^ r)) < 0):
            raise CoefficientOverflowError("coefficient overflow while merging monomials")

    nz = sums != 0
    return CappedPolynomial(
        p.num_vars, p.caps, new_keys[starts][nz], sums[nz], _layout=lay,
    )


def coefficient(p: CappedPolynomial, exps: Sequence[int]) -> int:
    return p.coefficient(exps)


def surviving_monomials(p: CappedPolynomial) -> list[tuple[tuple[int, ...], int]]:
    return p.surviving_monomials()


def naive_expand(terms: Iterable[Sequence[int]], num_vars: int) -> CappedPolynomial:
    """Unpruned product of binomials, computed on plain exponent tuples.

    Reference oracle only.  Caps are set to each variable's occurrence count
    so nothing is ever discarded.
    """
    terms = [_check_term(t, num_vars) for t in terms]
    if len(terms) > NAIVE_TERM_LIMIT:
        raise TermLimitError(f"{len(terms)} terms exceeds the limit of {NAIVE_TERM_LIMIT}")
    counts = [0] * num_vars
    poly: dict[tuple[int, ...], int] = {(0,) * num_vars: 1}
    for a, b in terms:
        counts[a] += 1
        counts[b] += 1
        nxt: dict[tuple[int, ...], int] = {}
        for exps, c in poly.items():
            up = list(exps)
            up[a] += 1
            ka = tuple(up)
            nxt[ka] = nxt.get(ka, 0) + c
            up = list(exps)
            up[b] += 1
            kb = tuple(up)
            nxt[kb] = nxt.get(kb, 0) - c
        poly = {k: c for k, c in nxt.items() if c}
        if any(not INT64_MIN <= c <= INT64_MAX for c in poly.values()):
            raise CoefficientOverflowError("coefficient overflow in naive expansion")
    return CappedPolynomial.from_dict(num_vars, counts, poly)
