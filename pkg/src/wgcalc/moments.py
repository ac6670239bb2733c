"""Moment formulas for invariant random matrices, evaluated exactly.

Three families of operations live here:

- Haar moments: joint moments of entries of Haar unitary and orthogonal
  matrices as double sums of Weingarten values against Kronecker deltas.
- Local-to-global formulas for invariant ensembles: the joint entry moments
  of a conjugation-invariant or left-right-invariant random matrix as exact
  linear combinations of expected power-trace products.  These return
  ``MomentFormula`` objects since the trace moments stay symbolic.
- Inverse-model evaluations: global trace moments for the inverse of a
  (complex or real) Wishart matrix, entry moments of the pseudo-inverse of a
  Ginibre matrix, and entry moments of the pseudo-inverse based inverse of a
  compound Wishart matrix, all as concrete values for a given scale matrix
  (and shape matrix).

All index sequences are one-based, matching the convention that matrices
carry indices in {1, ..., n}.  Exact inputs (rational scale/shape matrices)
produce exact rational outputs; numeric inputs produce floats.  The two
modes are never mixed within one evaluation.

A note on the compound-Wishart inverse: for an n x p Ginibre matrix G with
n <= p and an invertible p x p shape matrix B, the matrix whose moments these
formulas describe is V = (G^-)* B^{-1} G^-, built from the Moore-Penrose
pseudo-inverse G^- of G.  V coincides with (G B G*)^{-1} exactly in the
white case B = I (then both equal (G G*)^{-1}); for general B the two
matrices differ, and it is V that has the stated moments.  The Monte Carlo
harness samples V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .combinatorics import (
    PairPartition,
    Partition,
    Permutation,
    compose,
    coset_type_word,
    cycle_type_word,
    enumerate_pairings,
    enumerate_sym_words,
    inverse_word,
    pairing_of_coset_type,
    partitions,
    perm_of_cycle_type,
    power_traces,
)
from .errors import DEFAULT_MAX_MOMENT, ValidityError, check_guard
from .weingarten import (
    BiinvariantFunction,
    ClassFunction,
    frac_str,
    wg_orthogonal,
    wg_orthogonal_double,
    wg_unitary,
    wg_unitary_double,
)

BASIS_UNITARY = "unitary-trace"
BASIS_ORTHOGONAL = "orthogonal-trace"


# ---------------------------------------------------------------------------
# symbolic output


@dataclass
class MomentFormula:
    """Exact linear combination of expected power-trace products.

    ``coefficients`` is complete over the partitions of k (zeros stored
    explicitly); ``basis`` records whether the partitions index cycle-type
    trace products of the matrix itself (unitary case) or coset-type ones
    (orthogonal case).
    """

    k: int
    basis: str
    coefficients: dict[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in (BASIS_UNITARY, BASIS_ORTHOGONAL):
            raise ValueError(f"unknown basis {self.basis!r}")
        mus = partitions(self.k)
        missing = [mu for mu in mus if mu not in self.coefficients]
        if missing:
            raise ValueError(f"missing coefficient for {missing[0]}")
        self.coefficients = {mu: Fraction(self.coefficients[mu]) for mu in mus}

    def evaluate(self, trace_moments: Mapping[Partition, object]) -> object:
        """Contract the coefficients against supplied trace moments."""
        total = Fraction(0)
        for mu, c in self.coefficients.items():
            if c:
                total = total + c * trace_moments[mu]
        return total

    def to_json_dict(self) -> dict:
        return {
            "order": self.k,
            "basis": self.basis,
            "terms": [
                {"partition": list(mu.parts), "coeff": frac_str(c)}
                for mu, c in self.coefficients.items()
            ],
        }


# ---------------------------------------------------------------------------
# exact rational linear algebra (small matrices)


def _exact_inverse(rows: list[list[Fraction]], what: str) -> list[list[Fraction]]:
    """Gauss-Jordan inverse with pivot search, over Fractions."""
    n = len(rows)
    aug = [list(row) + [Fraction(int(r == c)) for c in range(n)]
           for r, row in enumerate(rows)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValidityError(f"{what} is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _exact_is_positive_definite(rows: list[list[Fraction]]) -> bool:
    """Via elimination pivots: a symmetric matrix is positive definite iff
    elimination without row exchanges runs to completion with positive pivots."""
    n = len(rows)
    m = [list(r) for r in rows]
    for col in range(n):
        pivot = m[col][col]
        if pivot <= 0:
            return False
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] / pivot
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return True


def _as_fraction_rows(entries) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in entries]
    n = len(rows)
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("rows must have equal length")
    return rows


class _Matrix:
    """Shared shell for the exact/numeric matrix wrappers below."""

    def __init__(self):
        self._rows: list[list[Fraction]] | None = None
        self._array: np.ndarray | None = None
        self._inverse = None
        self._inv_traces: dict[int, object] = {}

    @property
    def is_exact(self) -> bool:
        return self._rows is not None

    @property
    def dim(self) -> int:
        return len(self._rows) if self.is_exact else self._array.shape[0]

    def entry(self, r: int, c: int):
        if self.is_exact:
            return self._rows[r][c]
        return self._array[r, c]

    def to_numpy(self) -> np.ndarray:
        if self.is_exact:
            return np.array([[float(x) for x in row] for row in self._rows])
        return self._array

    def inverse(self):
        """Inverse entries: nested Fractions when exact, ndarray otherwise."""
        if self._inverse is None:
            self._inverse = self._compute_inverse()
        return self._inverse

    def inverse_entry(self, r: int, c: int):
        inv = self.inverse()
        return inv[r][c] if self.is_exact else inv[r, c]

    def inv_power_traces(self, max_power: int) -> dict[int, object]:
        """Traces of the first powers of the inverse, cached."""
        if max_power > 0 and max_power not in self._inv_traces:
            inv = self.inverse()
            rows = inv if self.is_exact else [list(r) for r in inv]
            self._inv_traces = power_traces(rows, max_power)
        return {m: self._inv_traces[m] for m in range(1, max_power + 1)}

    def inv_trace_monomial(self, mu: Partition):
        """Product of Tr(inverse^m) over the parts of mu."""
        traces = self.inv_power_traces(max(mu.parts, default=0))
        out = 1
        for m in mu.parts:
            out = out * traces[m]
        return out

    def _compute_inverse(self):
        raise NotImplementedError


class ScaleMatrix(_Matrix):
    """Positive definite scale matrix: real symmetric with rational entries
    (exact mode) or Hermitian as a numpy array (numeric mode)."""

    def __init__(self, *, rows=None, array=None):
        super().__init__()
        if (rows is None) == (array is None):
            raise ValueError("construct via from_rational or from_numeric")
        if rows is not None:
            self._rows = rows
        else:
            self._array = array

    @classmethod
    def from_rational(cls, entries) -> "ScaleMatrix":
        rows = _as_fraction_rows(entries)
        n = len(rows)
        for r in range(n):
            for c in range(r + 1, n):
                if rows[r][c] != rows[c][r]:
                    raise ValueError("exact scale matrix must be symmetric")
        return cls(rows=rows)

    @classmethod
    def from_numeric(cls, entries) -> "ScaleMatrix":
        array = np.asarray(entries)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError("scale matrix must be square")
        if not np.allclose(array, array.conj().T, rtol=1e-10, atol=1e-12):
            raise ValueError("numeric scale matrix must be Hermitian")
        if not np.iscomplexobj(array):
            array = array.astype(float)
        return cls(array=array)

    @property
    def n(self) -> int:
        return self.dim

    def require_real(self) -> None:
        if not self.is_exact and np.iscomplexobj(self._array):
            raise ValidityError("real-ensemble operations need a real scale matrix")

    def _compute_inverse(self):
        if self.is_exact:
            if not _exact_is_positive_definite(self._rows):
                raise ValidityError("scale matrix is not positive definite")
            return _exact_inverse(self._rows, "scale matrix")
        eigs = np.linalg.eigvalsh(self._array)
        if eigs.min() <= 0:
            raise ValidityError("scale matrix is not positive definite")
        return np.linalg.inv(self._array)


class ShapeMatrix(_Matrix):
    """Invertible shape matrix; only squareness is required up front, the
    real-ensemble operations additionally demand symmetry."""

    def __init__(self, *, rows=None, array=None):
        super().__init__()
        if (rows is None) == (array is None):
            raise ValueError("construct via from_rational or from_numeric")
        if rows is not None:
            self._rows = rows
        else:
            self._array = array

    @classmethod
    def from_rational(cls, entries) -> "ShapeMatrix":
        return cls(rows=_as_fraction_rows(entries))

    @classmethod
    def from_numeric(cls, entries) -> "ShapeMatrix":
        array = np.asarray(entries)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError("shape matrix must be square")
        if not np.iscomplexobj(array):
            array = array.astype(float)
        return cls(array=array)

    @classmethod
    def identity(cls, p: int) -> "ShapeMatrix":
        return cls.from_rational(
            [[1 if r == c else 0 for c in range(p)] for r in range(p)]
        )

    @property
    def p(self) -> int:
        return self.dim

    def require_symmetric(self) -> None:
        if self.is_exact:
            n = self.dim
            ok = all(
                self._rows[r][c] == self._rows[c][r]
                for r in range(n)
                for c in range(r + 1, n)
            )
        else:
            ok = np.allclose(self._array, self._array.T, rtol=1e-10, atol=1e-12)
        if not ok:
            raise ValidityError("real-case shape matrix must be symmetric")

    def require_real(self) -> None:
        if not self.is_exact and np.iscomplexobj(self._array):
            raise ValidityError("real-ensemble operations need a real shape matrix")

    def _compute_inverse(self):
        if self.is_exact:
            return _exact_inverse(self._rows, "shape matrix")
        sv = np.linalg.svd(self._array, compute_uv=False)
        if sv.min() == 0 or sv.max() / sv.min() > 1e12:
            raise ValidityError("shape matrix is singular or near singular")
        return np.linalg.inv(self._array)


# ---------------------------------------------------------------------------
# shared plumbing


def _check_indices(seq: Sequence[int], bound: int, name: str) -> tuple[int, ...]:
    seq = tuple(int(x) for x in seq)
    for x in seq:
        if not 1 <= x <= bound:
            raise ValueError(f"{name} index {x} outside 1..{bound}")
    return seq


def _delta_words_u(
    i: Sequence[int], i_prime: Sequence[int]
) -> list[tuple[int, ...]]:
    """Image words w with i[w(s)] == i_prime[s] for all s."""
    k = len(i)
    return [
        w
        for w in enumerate_sym_words(k)
        if all(i[w[s] - 1] == i_prime[s] for s in range(k))
    ]


def _pairing_data(k: int) -> list[tuple[tuple, tuple, tuple[tuple[int, int], ...]]]:
    """(word, inverse word, pairs) for every pairing of {1..2k}."""
    out = []
    for pp in enumerate_pairings(k):
        w = pp.word()
        out.append((w, inverse_word(w), pp.pairs))
    return out


def _matching_pairings(i: Sequence[int], data) -> list[tuple]:
    """Pairing entries whose pairs all match within the index sequence."""
    return [
        entry
        for entry in data
        if all(i[a - 1] == i[b - 1] for a, b in entry[2])
    ]


def _wg_lookup(fn: ClassFunction | BiinvariantFunction, exact: bool):
    if exact:
        return {mu.parts: v for mu, v in fn.values.items()}
    return {mu.parts: complex(v) for mu, v in fn.values.items()}


def _as_cycle_parts(pi) -> tuple[int, ...]:
    if isinstance(pi, Permutation):
        return cycle_type_word(pi.word)
    if isinstance(pi, Partition):
        return pi.parts
    raise TypeError(f"expected Permutation or Partition, got {type(pi).__name__}")


def _conj(x):
    return x.conjugate()


# ---------------------------------------------------------------------------
# Haar moments


def haar_unitary_moment(
    i: Sequence[int],
    j: Sequence[int],
    i_prime: Sequence[int],
    j_prime: Sequence[int],
    n: int,
    max_k: int | None = None,
) -> Fraction:
    """Joint moment of Haar unitary entries: the expectation of the product
    of u[i_s, j_s] times the conjugates of u[i'_s, j'_s]."""
    k = len(i)
    if not (len(j) == len(i_prime) == len(j_prime) == k):
        raise ValueError("all four index sequences must have equal length")
    check_guard(k, DEFAULT_MAX_MOMENT, "haar_unitary_moment", max_k)
    i = _check_indices(i, n, "row")
    j = _check_indices(j, n, "column")
    i_prime = _check_indices(i_prime, n, "row")
    j_prime = _check_indices(j_prime, n, "column")
    row_words = _delta_words_u(i, i_prime)
    col_words = _delta_words_u(j, j_prime)
    if not row_words or not col_words:
        return Fraction(0)
    wg = {mu.parts: v for mu, v in wg_unitary(k, n).values.items()}
    total = Fraction(0)
    for sw in row_words:
        swi = inverse_word(sw)
        for tw in col_words:
            total += wg[cycle_type_word(compose(swi, tw))]
    return total


def haar_orthogonal_moment(
    i: Sequence[int],
    j: Sequence[int],
    n: int,
    max_k: int | None = None,
) -> Fraction:
    """Joint moment of 2k Haar orthogonal entries u[i_s, j_s]."""
    if len(i) != len(j):
        raise ValueError("index sequences must have equal length")
    if len(i) % 2:
        raise ValueError("orthogonal moments need an even number of factors")
    k = len(i) // 2
    check_guard(k, DEFAULT_MAX_MOMENT, "haar_orthogonal_moment", max_k)
    i = _check_indices(i, n, "row")
    j = _check_indices(j, n, "column")
    data = _pairing_data(k)
    rows = _matching_pairings(i, data)
    cols = _matching_pairings(j, data)
    if not rows or not cols:
        return Fraction(0)
    wg = {mu.parts: v for mu, v in wg_orthogonal(k, n).values.items()}
    total = Fraction(0)
    for _, swi, _pairs in rows:
        for tw, _, _ in cols:
            total += wg[coset_type_word(compose(swi, tw))]
    return total


# ---------------------------------------------------------------------------
# invariant ensembles: local moments against symbolic trace moments


def conj_invariant_moment_u(
    i: Sequence[int],
    j: Sequence[int],
    n: int,
    max_k: int | None = None,
) -> MomentFormula:
    """Entry moment of a unitarily conjugation-invariant Hermitian matrix, as
    a combination of expected cycle-type trace products."""
    k = len(i)
    if len(j) != k:
        raise ValueError("index sequences must have equal length")
    check_guard(k, DEFAULT_MAX_MOMENT, "conj_invariant_moment_u", max_k)
    i = _check_indices(i, n, "row")
    j = _check_indices(j, n, "column")
    sigma_words = _delta_words_u(i, j)
    wg = {mu.parts: v for mu, v in wg_unitary(k, n).values.items()}
    coeff = {mu: Fraction(0) for mu in partitions(k)}
    sigma_invs = [inverse_word(w) for w in sigma_words]
    for tw in enumerate_sym_words(k):
        mu = Partition(cycle_type_word(tw))
        coeff[mu] += sum(
            (wg[cycle_type_word(compose(swi, tw))] for swi in sigma_invs),
            Fraction(0),
        )
    return MomentFormula(k, BASIS_UNITARY, coeff)


def conj_invariant_moment_o(
    i: Sequence[int],
    n: int,
    max_k: int | None = None,
) -> MomentFormula:
    """Entry moment of an orthogonally conjugation-invariant symmetric matrix
    (the 2k indices pair off as w[i_1,i_2] w[i_3,i_4] ...)."""
    if len(i) % 2:
        raise ValueError("need an even index sequence")
    k = len(i) // 2
    check_guard(k, DEFAULT_MAX_MOMENT, "conj_invariant_moment_o", max_k)
    i = _check_indices(i, n, "index")
    data = _pairing_data(k)
    sigmas = _matching_pairings(i, data)
    wg = {mu.parts: v for mu, v in wg_orthogonal(k, n).values.items()}
    coeff = {mu: Fraction(0) for mu in partitions(k)}
    sigma_invs = [entry[1] for entry in sigmas]
    for tw, _, _ in data:
        mu = Partition(coset_type_word(tw))
        coeff[mu] += sum(
            (wg[coset_type_word(compose(swi, tw))] for swi in sigma_invs),
            Fraction(0),
        )
    return MomentFormula(k, BASIS_ORTHOGONAL, coeff)


def lr_invariant_moment_u(
    i: Sequence[int],
    j: Sequence[int],
    i_prime: Sequence[int],
    j_prime: Sequence[int],
    n: int,
    p: int,
    max_k: int | None = None,
) -> MomentFormula:
    """Entry moment of a left-right unitarily invariant n x p matrix, as a
    combination of expected trace products of the matrix times its adjoint."""
    k = len(i)
    if not (len(j) == len(i_prime) == len(j_prime) == k):
        raise ValueError("all four index sequences must have equal length")
    check_guard(k, DEFAULT_MAX_MOMENT, "lr_invariant_moment_u", max_k)
    i = _check_indices(i, n, "row")
    i_prime = _check_indices(i_prime, n, "row")
    j = _check_indices(j, p, "column")
    j_prime = _check_indices(j_prime, p, "column")
    row_invs = [inverse_word(w) for w in _delta_words_u(i, i_prime)]
    col_words = _delta_words_u(j, j_prime)
    wg = {mu.parts: v for mu, v in wg_unitary_double(k, n, p).values.items()}
    coeff = {mu: Fraction(0) for mu in partitions(k)}
    for pw in enumerate_sym_words(k):
        mu = Partition(cycle_type_word(pw))
        acc = Fraction(0)
        for swi in row_invs:
            left = compose(pw, swi)
            for tw in col_words:
                acc += wg[cycle_type_word(compose(left, tw))]
        coeff[mu] += acc
    return MomentFormula(k, BASIS_UNITARY, coeff)


def lr_invariant_moment_o(
    i: Sequence[int],
    j: Sequence[int],
    n: int,
    p: int,
    max_k: int | None = None,
) -> MomentFormula:
    """Entry moment of a left-right orthogonally invariant n x p matrix, as a
    combination of expected coset-type trace products of the matrix times its
    transpose."""
    if len(i) != len(j):
        raise ValueError("index sequences must have equal length")
    if len(i) % 2:
        raise ValueError("need an even number of factors")
    k = len(i) // 2
    check_guard(k, DEFAULT_MAX_MOMENT, "lr_invariant_moment_o", max_k)
    i = _check_indices(i, n, "row")
    j = _check_indices(j, p, "column")
    data = _pairing_data(k)
    row_invs = [entry[1] for entry in _matching_pairings(i, data)]
    col_words = [entry[0] for entry in _matching_pairings(j, data)]
    wg = {mu.parts: v for mu, v in wg_orthogonal_double(k, n, p).values.items()}
    coeff = {mu: Fraction(0) for mu in partitions(k)}
    for pw, _, _ in data:
        mu = Partition(coset_type_word(pw))
        acc = Fraction(0)
        for tw in col_words:
            # composition order matters for coset types: the argument is
            # sigma1^{-1} sigma2 pi
            right = compose(tw, pw)
            for swi in row_invs:
                acc += wg[coset_type_word(compose(swi, right))]
        coeff[mu] += acc
    return MomentFormula(k, BASIS_ORTHOGONAL, coeff)


# ---------------------------------------------------------------------------
# inverse Wishart trace moments


def inv_wishart_trace_u(
    pi: Permutation | Partition,
    sigma_inv_traces: Mapping[int, object],
    n: int,
    p: int,
) -> object:
    """Expected cycle-type trace product of the inverse of a complex Wishart
    matrix (n-dimensional, p samples, scale with the supplied inverse power
    traces).  Requires p - n >= k."""
    parts = _as_cycle_parts(pi)
    k = sum(parts)
    check_guard(k, DEFAULT_MAX_MOMENT, "inv_wishart_trace_u")
    q = p - n
    if q < k:
        raise ValidityError(f"requires p - n >= k: p - n = {q}, k = {k}")
    pw = perm_of_cycle_type(Partition(parts)).word
    wg = {mu.parts: v for mu, v in wg_unitary(k, -q).values.items()}
    total = 0
    for tw in enumerate_sym_words(k):
        weight = wg[cycle_type_word(compose(pw, inverse_word(tw)))]
        tr = 1
        for m in cycle_type_word(tw):
            tr = tr * sigma_inv_traces[m]
        total = total + weight * tr
    return -total if k % 2 else total


def inv_wishart_trace_o(
    pi: PairPartition | Partition,
    sigma_inv_traces: Mapping[int, object],
    n: int,
    p: int,
) -> object:
    """Expected coset-type trace product of the inverse of a real Wishart
    matrix.  Requires p - n - 1 >= 2k - 1."""
    if isinstance(pi, PairPartition):
        pw = pi.word()
        k = pi.size
    elif isinstance(pi, Partition):
        pw = pairing_of_coset_type(pi).word()
        k = pi.weight
    else:
        raise TypeError(f"expected PairPartition or Partition, got {type(pi).__name__}")
    check_guard(k, DEFAULT_MAX_MOMENT, "inv_wishart_trace_o")
    q = p - n - 1
    if q < 2 * k - 1:
        raise ValidityError(
            f"requires p - n - 1 >= 2k - 1: p - n - 1 = {q}, 2k - 1 = {2 * k - 1}"
        )
    wg = {mu.parts: v for mu, v in wg_orthogonal(k, -q).values.items()}
    pwi = inverse_word(pw)
    total = 0
    for tw, _twi, _pairs in _pairing_data(k):
        # the Weingarten argument must carry the joint type of the two
        # matchings, which is the coset type of pi^{-1} tau
        weight = wg[coset_type_word(compose(pwi, tw))]
        tr = 1
        for m in coset_type_word(tw):
            tr = tr * sigma_inv_traces[m]
        total = total + weight * tr
    return -total if k % 2 else total


# ---------------------------------------------------------------------------
# pseudo-inverse of a Ginibre matrix


def ginibre_pinv_moment_c(
    i: Sequence[int],
    j: Sequence[int],
    i_prime: Sequence[int],
    j_prime: Sequence[int],
    sigma: ScaleMatrix,
    n: int,
    p: int,
) -> object:
    """Joint moment of pseudo-inverse entries of an n x p complex Ginibre
    matrix: expectation of the product of ginv[i_s, j_s] times the conjugates
    of ginv[i'_s, j'_s].  Row indices live in 1..p, column indices in 1..n.
    Requires n >= k and p - n >= k."""
    k = len(i)
    if not (len(j) == len(i_prime) == len(j_prime) == k):
        raise ValueError("all four index sequences must have equal length")
    check_guard(k, DEFAULT_MAX_MOMENT, "ginibre_pinv_moment_c")
    if sigma.n != n:
        raise ValueError(f"scale matrix is {sigma.n}-dimensional, expected {n}")
    i = _check_indices(i, p, "row")
    i_prime = _check_indices(i_prime, p, "row")
    j = _check_indices(j, n, "column")
    j_prime = _check_indices(j_prime, n, "column")
    q = p - n
    if n < k:
        raise ValidityError(f"requires n >= k: n = {n}, k = {k}")
    if q < k:
        raise ValidityError(f"requires p - n >= k: p - n = {q}, k = {k}")
    sinv = sigma.inverse()
    wg = _wg_lookup(wg_unitary_double(k, p, -q), sigma.is_exact)
    total = Fraction(0) if sigma.is_exact else 0j
    for sw in _delta_words_u(i, i_prime):
        swi = inverse_word(sw)
        for rw in enumerate_sym_words(k):
            prod = 1
            for s in range(k):
                prod = prod * sinv[j[rw[s] - 1] - 1][j_prime[s] - 1]
            total = total + wg[cycle_type_word(compose(swi, rw))] * _conj(prod)
    return -total if k % 2 else total


def ginibre_pinv_moment_r(
    i: Sequence[int],
    j: Sequence[int],
    sigma: ScaleMatrix,
    n: int,
    p: int,
) -> object:
    """Joint moment of 2k pseudo-inverse entries ginv[i_s, j_s] of an n x p
    real Ginibre matrix.  Requires n >= k and p - n - 1 >= 2k - 1."""
    if len(i) != len(j):
        raise ValueError("index sequences must have equal length")
    if len(i) % 2:
        raise ValueError("need an even number of factors")
    k = len(i) // 2
    check_guard(k, DEFAULT_MAX_MOMENT, "ginibre_pinv_moment_r")
    if sigma.n != n:
        raise ValueError(f"scale matrix is {sigma.n}-dimensional, expected {n}")
    sigma.require_real()
    i = _check_indices(i, p, "row")
    j = _check_indices(j, n, "column")
    q = p - n - 1
    if n < k:
        raise ValidityError(f"requires n >= k: n = {n}, k = {k}")
    if q < 2 * k - 1:
        raise ValidityError(
            f"requires p - n - 1 >= 2k - 1: p - n - 1 = {q}, 2k - 1 = {2 * k - 1}"
        )
    sinv = sigma.inverse()
    wg = _wg_lookup(wg_orthogonal_double(k, p, -q), sigma.is_exact)
    data = _pairing_data(k)
    sigmas = _matching_pairings(i, data)
    total = Fraction(0) if sigma.is_exact else 0.0
    for _, swi, _pairs in sigmas:
        for rw, _, rpairs in data:
            prod = 1
            for a, b in rpairs:
                prod = prod * sinv[j[a - 1] - 1][j[b - 1] - 1]
            total = total + wg[coset_type_word(compose(swi, rw))] * prod
    return -total if k % 2 else total


# ---------------------------------------------------------------------------
# inverse of a compound Wishart matrix


def compound_wishart_inv_c(
    i: Sequence[int],
    j: Sequence[int],
    sigma: ScaleMatrix,
    b: ShapeMatrix,
    n: int,
    p: int,
) -> object:
    """Joint moment of entries of the pseudo-inverse based inverse of a
    complex compound Wishart matrix (see the module docstring for the exact
    object).  Index sequences live in 1..n.  Requires n >= k, p - n >= k and
    an invertible shape matrix."""
    k = len(i)
    if len(j) != k:
        raise ValueError("index sequences must have equal length")
    check_guard(k, DEFAULT_MAX_MOMENT, "compound_wishart_inv_c")
    if sigma.n != n:
        raise ValueError(f"scale matrix is {sigma.n}-dimensional, expected {n}")
    if b.p != p:
        raise ValueError(f"shape matrix is {b.p}-dimensional, expected {p}")
    if sigma.is_exact != b.is_exact:
        raise ValueError("scale and shape matrices must both be exact or both numeric")
    i = _check_indices(i, n, "row")
    j = _check_indices(j, n, "column")
    q = p - n
    if n < k:
        raise ValidityError(f"requires n >= k: n = {n}, k = {k}")
    if q < k:
        raise ValidityError(f"requires p - n >= k: p - n = {q}, k = {k}")
    sinv = sigma.inverse()
    exact = sigma.is_exact
    wg = _wg_lookup(wg_unitary_double(k, p, -q), exact)
    trb = {mu.parts: b.inv_trace_monomial(mu) for mu in partitions(k)}
    total = Fraction(0) if exact else 0j
    for sw in enumerate_sym_words(k):
        tb = trb[cycle_type_word(sw)]
        swi = inverse_word(sw)
        for rw in enumerate_sym_words(k):
            prod = 1
            for s in range(k):
                prod = prod * sinv[j[rw[s] - 1] - 1][i[s] - 1]
            total = total + tb * wg[cycle_type_word(compose(swi, rw))] * _conj(prod)
    return -total if k % 2 else total


def compound_wishart_inv_r(
    i: Sequence[int],
    sigma: ScaleMatrix,
    b: ShapeMatrix,
    n: int,
    p: int,
) -> object:
    """Real analogue of ``compound_wishart_inv_c``: the 2k indices pair off
    as entries winv[i_1, i_2] winv[i_3, i_4] ...; the shape matrix must be
    symmetric.  Requires n >= k and p - n - 1 >= 2k - 1."""
    if len(i) % 2:
        raise ValueError("need an even index sequence")
    k = len(i) // 2
    check_guard(k, DEFAULT_MAX_MOMENT, "compound_wishart_inv_r")
    if sigma.n != n:
        raise ValueError(f"scale matrix is {sigma.n}-dimensional, expected {n}")
    if b.p != p:
        raise ValueError(f"shape matrix is {b.p}-dimensional, expected {p}")
    if sigma.is_exact != b.is_exact:
        raise ValueError("scale and shape matrices must both be exact or both numeric")
    sigma.require_real()
    b.require_real()
    b.require_symmetric()
    i = _check_indices(i, n, "index")
    q = p - n - 1
    if n < k:
        raise ValidityError(f"requires n >= k: n = {n}, k = {k}")
    if q < 2 * k - 1:
        raise ValidityError(
            f"requires p - n - 1 >= 2k - 1: p - n - 1 = {q}, 2k - 1 = {2 * k - 1}"
        )
    sinv = sigma.inverse()
    exact = sigma.is_exact
    wg = _wg_lookup(wg_orthogonal_double(k, p, -q), exact)
    trb = {mu.parts: b.inv_trace_monomial(mu) for mu in partitions(k)}
    data = _pairing_data(k)
    total = Fraction(0) if exact else 0.0
    for sw, swi, _pairs in data:
        tb = trb[coset_type_word(sw)]
        for rw, _, rpairs in data:
            prod = 1
            for u, v in rpairs:
                prod = prod * sinv[i[u - 1] - 1][i[v - 1] - 1]
            total = total + tb * wg[coset_type_word(compose(swi, rw))] * prod
    return -total if k % 2 else total
