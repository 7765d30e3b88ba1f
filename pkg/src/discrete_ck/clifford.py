"""
Complex Clifford algebra Cl(n+1, n+1) on bitmask blades.

Generators are indexed 0..2n+1.  Generators 0..n square to -1 and
n+1..2n+1 square to +1; distinct generators anticommute.  A blade is a
set of generators stored as a bitmask (bit j <-> e_j), always in
increasing index order.

Two representations are provided:

* :class:`Multivector` -- sparse ``{mask: coefficient}`` value type used for
  algebraic manipulation and exact relation checks.
* dense coefficient arrays with a trailing axis of length ``2**g``, used by
  the lattice and spectral layers.  :func:`left_multiply` acts on those.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from numbers import Number

import numpy as np

from .exceptions import SignatureMismatchError


@dataclass(frozen=True)
class Signature:
    """Signature of Cl(n+1, n+1) for spatial dimension ``n``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"spatial dimension must be a positive integer, got {self.n!r}")

    @property
    def g(self) -> int:
        """Number of generators, 2n + 2."""
        return 2 * self.n + 2

    @property
    def dim(self) -> int:
        """Number of blades, 2**g."""
        return 1 << self.g

    @property
    def negative_mask(self) -> int:
        # bits 0..n
        return (1 << (self.n + 1)) - 1

    def square(self, j: int) -> int:
        if not 0 <= j < self.g:
            raise IndexError(f"generator index {j} out of range 0..{self.g - 1}")
        return -1 if j <= self.n else 1


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated generator lists of blades a and b."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(sig: Signature, a: int, b: int) -> tuple[int, int]:
    """Product of unit blades: returns ``(sign, mask)`` with integer sign."""
    sign = reorder_sign(a, b)
    if bin(a & b & sig.negative_mask).count("1") & 1:
        sign = -sign
    return sign, a ^ b


@lru_cache(maxsize=None)
def sign_table(n: int) -> np.ndarray:
    """``table[a, b]`` is the integer sign of blade(a) * blade(b)."""
    sig = Signature(n)
    dim = sig.dim
    a = np.arange(dim)[:, None]
    b = np.arange(dim)[None, :]
    swaps = np.zeros((dim, dim), dtype=np.int64)
    shifted = a >> 1
    for _ in range(sig.g):
        swaps += _popcount(shifted & b)
        shifted = shifted >> 1
    swaps += _popcount(a & b & sig.negative_mask)
    table = 1 - 2 * (swaps & 1)
    table.setflags(write=False)
    return table


def _popcount(x: np.ndarray) -> np.ndarray:
    count = np.zeros_like(x)
    while np.any(x):
        count += x & 1
        x = x >> 1
    return count


def blade_grade(mask: int) -> int:
    return bin(mask).count("1")


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    idx = [str(j) for j in range(mask.bit_length()) if mask >> j & 1]
    return "e" + "_".join(idx) if any(len(i) > 1 for i in idx) else "e" + "".join(idx)


class Multivector:
    """Immutable sparse element of Cl(n+1, n+1) with complex coefficients."""

    __slots__ = ("_sig", "_terms")

    def __init__(self, sig: Signature, terms=None):
        self._sig = sig
        clean = {}
        for mask, c in (terms or {}).items():
            mask = int(mask)
            if not 0 <= mask < sig.dim:
                raise ValueError(f"blade mask {mask} invalid for n={sig.n}")
            c = complex(c)
            if c != 0:
                clean[mask] = clean.get(mask, 0) + c
        self._terms = {m: c for m, c in sorted(clean.items()) if c != 0}

    @property
    def signature(self) -> Signature:
        return self._sig

    @property
    def terms(self) -> dict[int, complex]:
        return dict(self._terms)

    def __getitem__(self, mask: int) -> complex:
        return self._terms.get(mask, 0j)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: Multivector):
        if other._sig != self._sig:
            raise SignatureMismatchError(
                f"signature mismatch: n={self._sig.n} vs n={other._sig.n}")

    def __add__(self, other):
        if isinstance(other, Number):
            other = scalar(self._sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = scalar(self._sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return add(self, scale(other, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return scale(self, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return scale(self, 1 / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Number):
            other = scalar(self._sig, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._sig == other._sig and self._terms == other._terms

    def __hash__(self):
        return hash((self._sig, tuple(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c:g}){blade_name(m)}" for m, c in self._terms.items())

    def scalar_part(self) -> complex:
        return self._terms.get(0, 0j)

    def is_scalar(self, atol: float = 0.0) -> bool:
        return all(abs(c) <= atol for m, c in self._terms.items() if m != 0)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self._sig.dim, dtype=complex)
        for m, c in self._terms.items():
            out[m] = c
        return out

    @classmethod
    def from_dense(cls, sig: Signature, coeffs) -> Multivector:
        coeffs = np.asarray(coeffs)
        if coeffs.shape != (sig.dim,):
            raise ValueError(f"expected {sig.dim} coefficients, got shape {coeffs.shape}")
        return cls(sig, {int(m): coeffs[m] for m in np.flatnonzero(coeffs)})


def scalar(sig: Signature, c=1) -> Multivector:
    return Multivector(sig, {0: c})


def generator(sig: Signature, j: int) -> Multivector:
    """Unit blade e_j."""
    if not 0 <= j < sig.g:
        raise IndexError(f"generator index {j} out of range 0..{sig.g - 1} for n={sig.n}")
    return Multivector(sig, {1 << j: 1})


def witt_pair(sig: Signature) -> tuple[Multivector, Multivector]:
    """Nilpotent time-direction pair ``(e_plus, e_minus)``.

    Chosen so that e_0 = e_minus - e_plus and e_{2n+1} = e_minus + e_plus.
    """
    e0 = generator(sig, 0)
    et = generator(sig, sig.g - 1)
    return (et - e0) / 2, (et + e0) / 2


def add(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    terms = dict(a._terms)
    for m, c in b._terms.items():
        terms[m] = terms.get(m, 0) + c
    return Multivector(a._sig, terms)


def scale(a: Multivector, c) -> Multivector:
    return Multivector(a._sig, {m: c * v for m, v in a._terms.items()})


def norm_inf(a: Multivector) -> float:
    return max((abs(c) for c in a._terms.values()), default=0.0)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    sig = a._sig
    terms: dict[int, complex] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s, m = blade_product(sig, ma, mb)
            terms[m] = terms.get(m, 0) + s * ca * cb
    return Multivector(sig, terms)


def left_multiply(left, values: np.ndarray, n: int) -> np.ndarray:
    """Clifford product ``left * values`` on dense coefficient arrays.

    Parameters
    ----------
    left : Multivector or ndarray
        Either one multivector applied everywhere or a dense array whose
        trailing axis holds blade coefficients and whose leading axes
        broadcast against ``values``.
    values : ndarray
        Dense coefficients, trailing axis of length ``2**(2n+2)``.
    n : int
        Spatial dimension fixing the signature.
    """
    table = sign_table(n)
    dim = table.shape[0]
    if values.shape[-1] != dim:
        raise SignatureMismatchError(
            f"trailing axis {values.shape[-1]} does not match 2**(2n+2) = {dim}")
    lanes = np.arange(dim)
    if isinstance(left, Multivector):
        if left.signature.n != n:
            raise SignatureMismatchError("multivector signature does not match field")
        out = np.zeros(values.shape, dtype=complex)
        for a, c in left:
            src = a ^ lanes
            out += (c * table[a, src]) * values[..., src]
        return out
    left = np.asarray(left)
    out = np.zeros(np.broadcast_shapes(values.shape, left.shape), dtype=complex)
    active = np.flatnonzero(np.any(left.reshape(-1, dim) != 0, axis=0))
    for a in active:
        src = a ^ lanes
        out += left[..., a:a + 1] * table[a, src] * values[..., src]
    return out
