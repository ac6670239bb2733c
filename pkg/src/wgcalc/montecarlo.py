"""Monte Carlo harness for the exact moment engine.

Sampling conventions:

- Normal variates come from Box-Muller transforms of uniforms drawn from a
  counter-based Philox stream keyed by (seed, stream id).  Every chunk of
  samples owns its stream, so estimates are bit-identical for a fixed
  (seed, sample count, parameters, chunk size) regardless of thread count.
- A standard complex normal z satisfies E[z conj(z)] = 1: real and imaginary
  parts are independent with variance 1/2 each.
- Gram matrices are inverted by LAPACK partial-pivot elimination; draws whose
  Gram matrix has condition number above 1e10 are resampled from the same
  stream, with a logged warning, rather than silently biasing the estimate.

The compound-inverse models sample V = (G^-)* B^{-1} G^- (transpose instead
of adjoint in the real case), the pseudo-inverse based inverse whose moments
the exact engine computes; for B = I this is exactly (G G*)^{-1}.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Callable, Sequence

import numpy as np

from .combinatorics import Partition
from .errors import ValidityError
from .moments import (
    ScaleMatrix,
    ShapeMatrix,
    compound_wishart_inv_c,
    compound_wishart_inv_r,
    conj_invariant_moment_u,
    ginibre_pinv_moment_c,
    ginibre_pinv_moment_r,
    haar_orthogonal_moment,
    haar_unitary_moment,
    inv_wishart_trace_o,
    inv_wishart_trace_u,
)
from .weingarten import frac_str

logger = logging.getLogger(__name__)

COND_LIMIT = 1e10
_RESAMPLE_CAP = 64


# ---------------------------------------------------------------------------
# random number generation


def make_generator(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator for one (seed, stream) pair."""
    seed, stream = int(seed), int(stream)
    if not 0 <= seed < 2**64 or not 0 <= stream < 2**64:
        raise ValueError("seed and stream must fit in an unsigned 64-bit integer")
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, stream], dtype=np.uint64))
    )


def standard_normal(gen: np.random.Generator, shape) -> np.ndarray:
    """Box-Muller standard normals (two uniforms per variate)."""
    u1 = gen.random(shape)
    u2 = gen.random(shape)
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)


def standard_complex_normal(gen: np.random.Generator, shape) -> np.ndarray:
    """Standard complex normals with E[z conj(z)] = 1, via the polar form of
    Box-Muller: modulus squared exponential, phase uniform."""
    u1 = gen.random(shape)
    u2 = gen.random(shape)
    return np.sqrt(-np.log1p(-u1)) * np.exp(2j * np.pi * u2)


# ---------------------------------------------------------------------------
# dense linear algebra helpers


def hermitian_sqrt(sigma) -> np.ndarray:
    """The positive semidefinite Hermitian square root, by eigendecomposition.

    Accepts a ScaleMatrix or an array; raises if the input is not Hermitian
    or has an eigenvalue below -1e-12 relative to the spectral radius.
    """
    a = sigma.to_numpy() if isinstance(sigma, ScaleMatrix) else np.asarray(sigma)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.conj().T, rtol=1e-10, atol=1e-12):
        raise ValueError("matrix must be Hermitian")
    eigvals, eigvecs = np.linalg.eigh(a)
    tol = 1e-12 * max(1.0, float(np.abs(eigvals).max(initial=0.0)))
    if eigvals.min(initial=0.0) < -tol:
        raise ValidityError(
            f"matrix is not positive semidefinite (eigenvalue {eigvals.min():.3e})"
        )
    root = (eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))) @ eigvecs.conj().T
    return root.real if not np.iscomplexobj(a) else root


def pseudo_inverse(g, cond_limit: float = COND_LIMIT) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of a full-rank rectangular matrix.

    Uses ginv = g* (g g*)^{-1} for wide matrices (full row rank) and the
    mirror formula for tall ones; raises with a condition diagnostic when the
    Gram matrix is too ill-conditioned to invert reliably.
    """
    g = np.asarray(g)
    if g.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    wide = g.shape[0] <= g.shape[1]
    gram = g @ g.conj().T if wide else g.conj().T @ g
    eigs = np.linalg.eigvalsh(gram)
    if eigs.min() <= 0 or eigs.max() > cond_limit * eigs.min():
        cond = float("inf") if eigs.min() <= 0 else float(eigs.max() / eigs.min())
        raise ValueError(f"rank-deficient input: gram condition number {cond:.3e}")
    if wide:
        return np.linalg.solve(gram, g).conj().T
    return np.linalg.solve(gram, g.conj().T)


# ---------------------------------------------------------------------------
# single-matrix samplers


def _haar_batch(gen, count: int, n: int, complex_mode: bool) -> np.ndarray:
    if complex_mode:
        z = standard_complex_normal(gen, (count, n, n))
    else:
        z = standard_normal(gen, (count, n, n))
    q, r = np.linalg.qr(z)
    d = np.einsum("...ii->...i", r).copy()
    if complex_mode:
        mod = np.abs(d)
        mod[mod == 0] = 1.0
        phase = d / mod
    else:
        phase = np.sign(d)
        phase[phase == 0] = 1.0
    return q * phase[..., None, :]


def sample_haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """One Haar-distributed unitary matrix (QR with phase correction)."""
    return _haar_batch(rng, 1, n, True)[0]


def sample_haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """One Haar-distributed orthogonal matrix (QR with sign correction)."""
    return _haar_batch(rng, 1, n, False)[0]


def sample_ginibre_c(n: int, p: int, sigma: ScaleMatrix, rng) -> np.ndarray:
    """One n x p complex Ginibre matrix with the given scale: sqrt(sigma)
    times a matrix of independent standard complex normals."""
    root = hermitian_sqrt(sigma)
    return root @ standard_complex_normal(rng, (n, p))


def sample_ginibre_r(n: int, p: int, sigma: ScaleMatrix, rng) -> np.ndarray:
    """One n x p real Ginibre matrix with the given scale."""
    root = hermitian_sqrt(sigma)
    return root @ standard_normal(rng, (n, p))


# ---------------------------------------------------------------------------
# batched internals


def _ginibre_batch(gen, count, root, n, p, complex_mode):
    if complex_mode:
        z = standard_complex_normal(gen, (count, n, p))
    else:
        z = standard_normal(gen, (count, n, p))
    return root @ z


def _bad_gram(m: np.ndarray) -> np.ndarray:
    eigs = np.linalg.eigvalsh(m)
    low, high = eigs[..., 0], eigs[..., -1]
    return (low <= 0) | (high > COND_LIMIT * low)


def _guarded_gram(gen, count, draw) -> tuple[np.ndarray, np.ndarray, int]:
    """Draw matrices, recompute any whose Gram matrix fails the condition
    guard; returns (matrices, gram matrices, number of resampled draws)."""
    g = draw(gen, count)
    m = g @ g.conj().swapaxes(-1, -2)
    bad = _bad_gram(m)
    resampled = 0
    tries = 0
    while bad.any():
        tries += 1
        if tries > _RESAMPLE_CAP:
            raise RuntimeError("condition-guard resampling cap exceeded")
        nbad = int(bad.sum())
        resampled += nbad
        logger.warning("resampling %d draw(s) failing the gram condition guard", nbad)
        repl = draw(gen, nbad)
        g[bad] = repl
        m[bad] = repl @ repl.conj().swapaxes(-1, -2)
        flags = _bad_gram(m[bad])
        bad[np.nonzero(bad)[0][~flags]] = False
    return g, m, resampled


def _batch_pinv(g: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Pseudo-inverses of a batch of wide full-rank matrices given their Gram
    matrices m = g g*."""
    return np.linalg.solve(m, g).conj().swapaxes(-1, -2)


def _entry_product(a: np.ndarray, rows, cols) -> np.ndarray:
    return np.prod(a[:, rows, cols], axis=1)


def _trace_product(inv: np.ndarray, parts: Sequence[int]) -> np.ndarray:
    max_power = max(parts)
    traces = {}
    power = inv
    for m in range(1, max_power + 1):
        traces[m] = np.einsum("...ii->...", power)
        if m < max_power:
            power = power @ inv
    out = np.ones(inv.shape[0], dtype=inv.dtype)
    for m in parts:
        out = out * traces[m]
    return out


# ---------------------------------------------------------------------------
# estimator


@dataclass
class EstimatorResult:
    """Sample mean of an entry-product statistic with its uncertainty."""

    model: str
    estimate: complex
    stderr: float
    stderr_components: tuple[float, float]
    samples: int
    seed: int
    chunk_size: int
    exact: complex | None = None
    exact_str: str | None = None
    z_score: float | None = None
    resampled: int = 0

    def to_json_dict(self) -> dict:
        doc = {
            "model": self.model,
            "estimate": [self.estimate.real, self.estimate.imag],
            "stderr": self.stderr,
            "stderr_components": list(self.stderr_components),
            "samples": self.samples,
            "seed": self.seed,
            "chunk_size": self.chunk_size,
            "resampled": self.resampled,
        }
        if self.exact is not None:
            doc["exact"] = [self.exact.real, self.exact.imag]
            if self.exact_str is not None:
                doc["exact_str"] = self.exact_str
            doc["z_score"] = self.z_score
        return doc


def _seq(params: dict, key: str, length: int | None = None) -> tuple[int, ...]:
    if key not in params or params[key] is None:
        raise ValueError(f"model requires index sequence {key!r}")
    seq = tuple(int(x) for x in params[key])
    if length is not None and len(seq) != length:
        raise ValueError(f"index sequence {key!r} must have length {length}")
    return seq


def _zero_based(seq: Sequence[int]) -> np.ndarray:
    return np.asarray(seq, dtype=np.intp) - 1


def _get_scale(params: dict) -> ScaleMatrix:
    sigma = params.get("sigma")
    if not isinstance(sigma, ScaleMatrix):
        raise ValueError("model requires sigma as a ScaleMatrix")
    return sigma


def _get_shape(params: dict) -> ShapeMatrix:
    b = params.get("b")
    if not isinstance(b, ShapeMatrix):
        raise ValueError("model requires b as a ShapeMatrix")
    return b


def _prepare_haar_u(params):
    n = int(params["n"])
    i, j = _seq(params, "i"), _seq(params, "j", len(params["i"]))
    ip = _seq(params, "i_prime", len(i))
    jp = _seq(params, "j_prime", len(i))
    exact = haar_unitary_moment(i, j, ip, jp, n)
    ri, ci, rp, cp = map(_zero_based, (i, j, ip, jp))

    def sampler(gen, count):
        u = _haar_batch(gen, count, n, True)
        return _entry_product(u, ri, ci) * _entry_product(u, rp, cp).conj(), 0

    return sampler, exact


def _prepare_haar_o(params):
    n = int(params["n"])
    i = _seq(params, "i")
    j = _seq(params, "j", len(i))
    exact = haar_orthogonal_moment(i, j, n)
    ri, ci = _zero_based(i), _zero_based(j)

    def sampler(gen, count):
        u = _haar_batch(gen, count, n, False)
        return _entry_product(u, ri, ci), 0

    return sampler, exact


def _prepare_ginibre_pinv(params, complex_mode):
    n, p = int(params["n"]), int(params["p"])
    sigma = _get_scale(params)
    root = hermitian_sqrt(sigma)
    if complex_mode:
        i, j = _seq(params, "i"), _seq(params, "j", len(params["i"]))
        ip = _seq(params, "i_prime", len(i))
        jp = _seq(params, "j_prime", len(i))
        exact = ginibre_pinv_moment_c(i, j, ip, jp, sigma, n, p)
    else:
        i = _seq(params, "i")
        j = _seq(params, "j", len(i))
        exact = ginibre_pinv_moment_r(i, j, sigma, n, p)
    ri, ci = _zero_based(i), _zero_based(j)
    if complex_mode:
        rp, cp = _zero_based(ip), _zero_based(jp)

    def sampler(gen, count):
        draw = lambda g, c: _ginibre_batch(g, c, root, n, p, complex_mode)
        g, m, resampled = _guarded_gram(gen, count, draw)
        ginv = _batch_pinv(g, m)
        stat = _entry_product(ginv, ri, ci)
        if complex_mode:
            stat = stat * _entry_product(ginv, rp, cp).conj()
        return stat, resampled

    return sampler, exact


def _prepare_inv_wishart(params, complex_mode):
    n, p = int(params["n"]), int(params["p"])
    sigma = _get_scale(params)
    if not complex_mode:
        sigma.require_real()
    pi = params.get("pi")
    if not isinstance(pi, Partition):
        raise ValueError("model requires pi as a Partition")
    root = hermitian_sqrt(sigma)
    k = pi.weight
    traces = sigma.inv_power_traces(max(k, max(pi.parts, default=1)))
    if complex_mode:
        exact = inv_wishart_trace_u(pi, traces, n, p)
    else:
        exact = inv_wishart_trace_o(pi, traces, n, p)
    parts = pi.parts

    def sampler(gen, count):
        draw = lambda g, c: _ginibre_batch(g, c, root, n, p, complex_mode)
        _, m, resampled = _guarded_gram(gen, count, draw)
        return _trace_product(np.linalg.inv(m), parts), resampled

    return sampler, exact


def _prepare_compound_inv(params, complex_mode):
    n, p = int(params["n"]), int(params["p"])
    sigma = _get_scale(params)
    b = _get_shape(params)
    root = hermitian_sqrt(sigma)
    binv_num = np.linalg.inv(b.to_numpy())
    if complex_mode:
        i = _seq(params, "i")
        j = _seq(params, "j", len(i))
        exact = compound_wishart_inv_c(i, j, sigma, b, n, p)
        ri, ci = _zero_based(i), _zero_based(j)
    else:
        i = _seq(params, "i")
        exact = compound_wishart_inv_r(i, sigma, b, n, p)
        ri, ci = _zero_based(i[0::2]), _zero_based(i[1::2])

    def sampler(gen, count):
        draw = lambda g, c: _ginibre_batch(g, c, root, n, p, complex_mode)
        g, m, resampled = _guarded_gram(gen, count, draw)
        ginv = _batch_pinv(g, m)
        v = ginv.conj().swapaxes(-1, -2) @ binv_num @ ginv
        return _entry_product(v, ri, ci), resampled

    return sampler, exact


def _prepare_conj_demo(params):
    n = int(params["n"])
    diag = params.get("diag")
    if diag is None or len(diag) != n:
        raise ValueError("model requires diag with one eigenvalue per dimension")
    diag = [Fraction(d) for d in diag]
    i, j = _seq(params, "i"), _seq(params, "j", len(params["i"]))
    formula = conj_invariant_moment_u(i, j, n)
    powers = {m: sum(d**m for d in diag) for m in range(1, formula.k + 1)}
    trace_moments = {}
    for mu in formula.coefficients:
        value = Fraction(1)
        for m in mu.parts:
            value *= powers[m]
        trace_moments[mu] = value
    exact = formula.evaluate(trace_moments)
    dvec = np.array([float(d) for d in diag])
    ri, ci = _zero_based(i), _zero_based(j)

    def sampler(gen, count):
        u = _haar_batch(gen, count, n, True)
        w = (u * dvec[None, None, :]) @ u.conj().swapaxes(-1, -2)
        return _entry_product(w, ri, ci), 0

    return sampler, exact


_MODELS: dict[str, Callable] = {
    "haar-u": _prepare_haar_u,
    "haar-o": _prepare_haar_o,
    "ginibre-pinv-c": lambda p: _prepare_ginibre_pinv(p, True),
    "ginibre-pinv-r": lambda p: _prepare_ginibre_pinv(p, False),
    "inv-wishart-c": lambda p: _prepare_inv_wishart(p, True),
    "inv-wishart-r": lambda p: _prepare_inv_wishart(p, False),
    "compound-inv-c": lambda p: _prepare_compound_inv(p, True),
    "compound-inv-r": lambda p: _prepare_compound_inv(p, False),
    "conj-invariant-demo": _prepare_conj_demo,
}

MODEL_NAMES = tuple(_MODELS)


def estimate_moment(
    model: str,
    *,
    num_samples: int,
    seed: int,
    chunk_size: int = 4096,
    threads: int = 1,
    exact_override=None,
    **params,
) -> EstimatorResult:
    """Sample mean of the designated entry-product statistic over independent
    draws, with standard error and a z-score against the exact engine.

    Chunks of at most ``chunk_size`` draws are generated from per-chunk
    streams and reduced in a fixed order, so the result does not depend on
    ``threads``.  ``exact_override`` replaces the engine's exact reference
    (used by the self-test of the verification harness).
    """
    if model not in _MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {MODEL_NAMES}")
    num_samples = int(num_samples)
    if num_samples < 1000:
        raise ValueError("need at least 1000 samples for a meaningful estimate")
    chunk_size = int(chunk_size)
    if chunk_size < 1:
        raise ValueError("chunk size must be positive")
    sampler, exact = _MODELS[model](params)
    if exact_override is not None:
        exact = exact_override

    sizes = [
        min(chunk_size, num_samples - start)
        for start in range(0, num_samples, chunk_size)
    ]

    def run_chunk(args):
        stream, size = args
        gen = make_generator(seed, stream)
        stats, resampled = sampler(gen, size)
        stats = np.asarray(stats, dtype=complex)
        return (
            complex(stats.sum()),
            float((stats.real**2).sum()),
            float((stats.imag**2).sum()),
            resampled,
        )

    tasks = list(enumerate(sizes))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run_chunk, tasks))
    else:
        partials = [run_chunk(t) for t in tasks]

    sum_x = 0j
    sum_re2 = sum_im2 = 0.0
    resampled = 0
    for cx, cre2, cim2, cres in partials:
        sum_x += cx
        sum_re2 += cre2
        sum_im2 += cim2
        resampled += cres

    mean = sum_x / num_samples
    var_re = max(0.0, (sum_re2 - num_samples * mean.real**2) / (num_samples - 1))
    var_im = max(0.0, (sum_im2 - num_samples * mean.imag**2) / (num_samples - 1))
    se_re = sqrt(var_re / num_samples)
    se_im = sqrt(var_im / num_samples)
    stderr = sqrt(se_re**2 + se_im**2)

    exact_c = exact_str = z_score = None
    if exact is not None:
        exact_c = complex(exact)
        if isinstance(exact, Fraction):
            exact_str = frac_str(exact)
        gap = abs(mean - exact_c)
        z_score = gap / stderr if stderr > 0 else (0.0 if gap == 0 else float("inf"))

    return EstimatorResult(
        model=model,
        estimate=mean,
        stderr=stderr,
        stderr_components=(se_re, se_im),
        samples=num_samples,
        seed=int(seed),
        chunk_size=chunk_size,
        exact=exact_c,
        exact_str=exact_str,
        z_score=z_score,
        resampled=resampled,
    )
