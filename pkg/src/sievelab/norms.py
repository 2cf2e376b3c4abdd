"""Large-sieve Gram matrices and their extremal eigenvalues.

Three families act on coefficient vectors indexed by coprime pairs or by
rationals:

* multiplicative: moduli Q/2 < q <= Q coprime to k, primitive chi mod q,
  theta mod k, t in [T/2, T], acting through
  lambda_{chi theta, t}(a,b) = chi theta(a) conj(chi theta(b)) (a/b)^{it};
* additive: moduli Q/2 < q <= Q, primitive additive characters
  e_q(t a bbar), fully discrete;
* rational: all moduli q <= Q, primitive chi mod q, columns the positive
  rationals of height ht <= N, gated by strict localization at q.

The sup over unit coefficient vectors of the family-summed square is the
largest eigenvalue of a finite Hermitian Gram matrix on the index set: the
t-integral comes out in closed form,

    I_T(L) = int_{T/2}^{T} e^{itL} dt = (e^{iTL} - e^{iTL/2}) / (iL),

with a Taylor branch near L = 0, and the character sums collapse by the
standard Moebius identity over primitive characters,

    sum over primitive chi mod q of chi(u) conj(chi(v))
        = sum_{d | q} mu(q/d) phi(d) [u = v mod d]      (u, v units mod q).

The pair-indexed dense matrix is the primary object.  For windows with many
thousands of pairs the same eigenvalue is taken from the family-side
quadrature Gram (members x Gauss-Legendre nodes), whose nonzero spectrum is
identical; the routes are cross-checked in the tests.
"""

import struct
from dataclasses import dataclass, field
from math import ceil, gcd, isqrt, log

import numpy as np

from .arith import divisors, mobius, primes_in, totient
from .characters import char_group, primitive_chars, value_table
from .rationals import CoprimePair, RationalPoint, enumerate_pairs, rationals_up_to

_TAYLOR_CUT = 1e-6
_POWER_SEED = 0x5EED
_DENSE_DIM = 512
_PAIR_ROUTE_MAX = 2000


# ----------------------------------------------------------------------
# domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    Q: float
    k: int = 1
    T: float = 1.0
    parity: str | None = None  # None | "even" | "odd"

    def __post_init__(self):
        if self.Q < 1 or self.T < 1 or self.k < 1 or int(self.k) != self.k:
            raise ValueError("need Q >= 1, T >= 1, integer k >= 1")
        if self.parity not in (None, "even", "odd"):
            raise ValueError("parity must be None, 'even', or 'odd'")


@dataclass(frozen=True)
class GramMatrix:
    index: tuple
    matrix: np.ndarray

    @property
    def dim(self):
        return len(self.index)


@dataclass(frozen=True)
class NormEstimate:
    value: float
    residual: float
    iterations: int
    method: str


def family_members(spec):
    """All (q, chi, theta) of the multiplicative family: Q/2 < q <= Q,
    gcd(q, k) = 1, chi primitive mod q, theta mod k, optionally filtered
    by the parity of chi*theta."""
    members = []
    lo, hi = int(spec.Q / 2) + 1, int(spec.Q)
    for q in range(lo, hi + 1):
        if gcd(q, spec.k) != 1:
            continue
        for chi in primitive_chars(q):
            for theta in char_group(spec.k):
                if spec.parity is not None:
                    sign = chi.parity() * theta.parity()
                    if sign != (1 if spec.parity == "even" else -1):
                        continue
                members.append((q, chi, theta))
    return members


# ----------------------------------------------------------------------
# the t-integral
# ----------------------------------------------------------------------

def t_integral(L, T):
    """I_T(L) = int_{T/2}^T e^{itL} dt, closed form with a Taylor branch
    for |L| T < 1e-6.  Vectorized over L.

    The closed form is evaluated as (T/2) sinc(LT/4) e^{3iTL/4} — the same
    function as (e^{iTL} - e^{iTL/2})/(iL) but free of the cancellation
    that would otherwise break the |I_T(L) - T/2| <= 3|L|T^2/8 bound in
    floating point near L = 0."""
    L = np.asarray(L, dtype=np.float64)
    small = np.abs(L) * T < _TAYLOR_CUT
    closed = (T / 2) * np.sinc(L * (T / (4 * np.pi))) * np.exp(0.75j * T * L)
    # I_T = T/2 + i (3T^2/8) L (1 - (5/48)(LT)^2) - (7T^3/48) L^2 + O(L^4)
    x2 = (L * T) ** 2
    taylor = (T / 2
              + 1j * (3 * T * T / 8) * L * (1 - x2 * (5 / 48))
              - (7 * T**3 / 48) * (L * L))
    out = np.where(small, taylor, closed)
    if out.ndim == 0:
        return complex(out)
    return out


# ----------------------------------------------------------------------
# Gram constructions
# ----------------------------------------------------------------------

def _index_arrays(index):
    a = np.array([p.a for p in index], dtype=np.int64)
    b = np.array([p.b for p in index], dtype=np.int64)
    return a, b


def _moebius_congruence_sum(q, cross, ssign=1):
    """sum_{d | q} mu(q/d) phi(d) [a1 b2 = ssign * a2 b1 mod d] as an integer
    matrix, where cross[i, j] = a_i * b_j."""
    n = cross.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for d in divisors(q):
        mu = mobius(q // d)
        if mu == 0:
            continue
        cong = (cross - ssign * cross.T) % d == 0
        acc += (mu * totient(d)) * cong
    return acc


def _hermitize(G):
    """Mirror the strict upper triangle onto the lower so G[m,n] is exactly
    conj(G[n,m]) and the diagonal is exactly real."""
    n = G.shape[0]
    iu = np.triu_indices(n, 1)
    out = np.zeros_like(G)
    out[iu] = G[iu]
    out = out + out.conj().T
    out[np.diag_indices(n)] = G.diagonal().real
    return out


def gram_multiplicative(spec, index):
    """Closed-form Gram matrix of the multiplicative family on the given
    coprime pairs:

    G[n, m] = [sum over q in (Q/2, Q], (q, k) = 1, (a_n b_n a_m b_m, q) = 1
                of the Moebius congruence sum]
              * phi(k) [a_n b_m = a_m b_n mod k] [(a_n b_n a_m b_m, k) = 1]
              * I_T(log(a_n b_m / (a_m b_n))).

    With a parity restriction the projector (1/2)(1 + eps chi(-1) theta(-1))
    couples the two factors: the matrix becomes the half-sum of the
    (u = v)-branch and eps times the (u = -v)-branch taken jointly at q
    and k.
    """
    index = tuple(index)
    n = len(index)
    if n == 0:
        return GramMatrix(index, np.zeros((0, 0), dtype=np.complex128))
    a, b = _index_arrays(index)
    prod = a * b
    cross = np.outer(a, b)
    want_minus = spec.parity is not None

    S_plus = np.zeros((n, n), dtype=np.float64)
    S_minus = np.zeros((n, n), dtype=np.float64) if want_minus else None
    lo, hi = int(spec.Q / 2) + 1, int(spec.Q)
    for q in range(lo, hi + 1):
        if gcd(q, spec.k) != 1:
            continue
        gate2 = np.outer(*(((np.gcd(prod, q) == 1).astype(np.float64),) * 2))
        S_plus += gate2 * _moebius_congruence_sum(q, cross, 1)
        if want_minus:
            S_minus += gate2 * _moebius_congruence_sum(q, cross, -1)

    k = spec.k
    kgate2 = np.outer(*(((np.gcd(prod, k) == 1).astype(np.float64),) * 2))
    kcong_plus = ((cross - cross.T) % k == 0).astype(np.float64)
    if spec.parity is None:
        S = S_plus * totient(k) * kgate2 * kcong_plus
    else:
        eps = 1 if spec.parity == "even" else -1
        kcong_minus = ((cross + cross.T) % k == 0).astype(np.float64)
        S = (totient(k) * kgate2 / 2) * (
            S_plus * kcong_plus + eps * S_minus * kcong_minus
        )

    # log(a_n b_m / (a_m b_n)) = L_n - L_m
    L = np.log(a.astype(np.float64)) - np.log(b.astype(np.float64))
    G = S * t_integral(L[:, None] - L[None, :], spec.T)
    return GramMatrix(index, _hermitize(G))


def _gauss_nodes(lo, hi, n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


def _member_values(q, chi, theta, a, b):
    """chi theta(a) conj(chi theta(b)) on index arrays (0 off the units)."""
    tc = value_table(chi)
    tt = value_table(theta)
    k = theta.modulus
    va = tc[a % q] * tt[a % k]
    vb = tc[b % q] * tt[b % k]
    return va * vb.conj()


def gram_bruteforce(spec, index, quadrature_nodes=64):
    """Oracle: the same Gram matrix by explicit sums over (q, chi, theta)
    and Gauss-Legendre quadrature of the t-integral."""
    index = tuple(index)
    n = len(index)
    if n == 0:
        return GramMatrix(index, np.zeros((0, 0), dtype=np.complex128))
    a, b = _index_arrays(index)
    t, w = _gauss_nodes(spec.T / 2, spec.T, quadrature_nodes)
    L = np.log(a.astype(np.float64)) - np.log(b.astype(np.float64))
    phases = np.exp(1j * np.outer(L, t)) * np.sqrt(w)[None, :]
    G = np.zeros((n, n), dtype=np.complex128)
    for q, chi, theta in family_members(spec):
        vals = _member_values(q, chi, theta, a, b)
        A = vals[:, None] * phases
        G += A @ A.conj().T
    return GramMatrix(index, _hermitize(G))


def additive_matrix(Q, N):
    """The additive family's coefficient matrix: rows (q, t) with
    Q/2 < q <= Q and t primitive mod q (t = 0 counts as primitive for
    q = 1), columns the dyadic-window pairs; entries e_q(t a bbar) gated
    on gcd(ab, q) = 1."""
    index = tuple(enumerate_pairs(N, "dyadic"))
    rows = []
    lo, hi = int(Q / 2) + 1, int(Q)
    for q in range(lo, hi + 1):
        if q == 1:
            rows.append((1, 0))
            continue
        rows.extend((q, t) for t in range(1, q) if gcd(t, q) == 1)
    mat = np.zeros((len(rows), len(index)), dtype=np.complex128)
    for i, (q, t) in enumerate(rows):
        for j, p in enumerate(index):
            if q > 1 and gcd(p.a * p.b, q) != 1:
                continue
            abar = (p.a * pow(p.b, -1, q)) % q if q > 1 else 0
            mat[i, j] = np.exp(2j * np.pi * t * abar / q)
    return rows, index, mat


def gram_additive(Q, N):
    """G[n, m] = sum over q in (Q/2, Q] with gcd(a_n b_n a_m b_m, q) = 1 of
    c_q(a_n bbar_n - a_m bbar_m), the Ramanujan-sum Gram of the additive
    family on the dyadic window."""
    from .characters import ramanujan_sum

    index = tuple(enumerate_pairs(N, "dyadic"))
    n = len(index)
    if n == 0:
        return GramMatrix(index, np.zeros((0, 0), dtype=np.complex128))
    a, b = _index_arrays(index)
    prod = a * b
    cross = np.outer(a, b)
    diff = cross - cross.T  # a_n b_m - a_m b_n, same gcd with q as the bbar form
    G = np.zeros((n, n), dtype=np.float64)
    lo, hi = int(Q / 2) + 1, int(Q)
    for q in range(lo, hi + 1):
        gate = np.gcd(prod, q) == 1
        cq = np.array([ramanujan_sum(q, int(g)) for g in range(q)], dtype=np.float64)
        vals = cq[np.gcd(diff, q) % q] if q > 1 else np.ones_like(diff, dtype=np.float64)
        G += np.outer(gate, gate) * vals
    return GramMatrix(index, G.astype(np.complex128))


def gram_rational(Q, N):
    """Rational-family Gram: rows all q <= Q with primitive chi mod q,
    columns the positive rationals of ht <= N; contributions gated by
    strict localization gcd(a b, q) = 1."""
    index = tuple(rationals_up_to(N))
    n = len(index)
    if n == 0:
        return GramMatrix(index, np.zeros((0, 0), dtype=np.complex128))
    a, b = _index_arrays(index)
    prod = a * b
    cross = np.outer(a, b)
    G = np.zeros((n, n), dtype=np.float64)
    for q in range(1, int(Q) + 1):
        gate = (np.gcd(prod, q) == 1).astype(np.float64)
        G += np.outer(gate, gate) * _moebius_congruence_sum(q, cross)
    return GramMatrix(index, G.astype(np.complex128))


def gram_rational_bruteforce(Q, N):
    """Oracle for gram_rational via explicit character sums."""
    from .rationals import reduce_mod

    index = tuple(rationals_up_to(N))
    n = len(index)
    G = np.zeros((n, n), dtype=np.complex128)
    for q in range(1, int(Q) + 1):
        for chi in primitive_chars(q):
            row = np.zeros(n, dtype=np.complex128)
            for j, pt in enumerate(index):
                if gcd(pt.a * pt.b, q) == 1:
                    row[j] = chi(reduce_mod(pt, q))
            G += np.outer(row, row.conj())
    return GramMatrix(index, _hermitize(G))


# ----------------------------------------------------------------------
# extremal eigenvalue
# ----------------------------------------------------------------------

def top_eigenvalue(G, tol=1e-9, seed=_POWER_SEED, max_iter=20000):
    """Largest eigenvalue of a Hermitian matrix as a NormEstimate.

    Power iteration with a deterministic seeded start and Rayleigh-quotient
    convergence (|lambda - rho| <= ||Gv - rho v|| for Hermitian G, so the
    residual certifies the relative tolerance); dense eigensolver below
    dim 512 and as the stagnation fallback.  The returned value dominates
    every Rayleigh quotient evaluated on the way, including the coordinate
    vector at the largest diagonal entry.
    """
    M = G.matrix if isinstance(G, GramMatrix) else np.asarray(G)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 0:
        return NormEstimate(0.0, 0.0, 0, "dense")
    scale = max(np.abs(M).max(), 1.0)
    if np.abs(M - M.conj().T).max() > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian")

    # certified Rayleigh floors: coordinate vectors and the all-ones vector
    best_diag = float(M.diagonal().real.max())
    best_diag = max(best_diag, float(M.sum().real) / n)

    def dense(iters):
        vals, vecs = np.linalg.eigh(M)
        lam = float(vals[-1])
        v = vecs[:, -1]
        res = float(np.linalg.norm(M @ v - lam * v)) / max(abs(lam), 1.0)
        return NormEstimate(max(lam, best_diag), res, iters, "dense")

    if n <= _DENSE_DIM:
        return dense(1)

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v[int(np.argmax(M.diagonal().real))] += 2.0 * np.abs(v).max()
    v /= np.linalg.norm(v)
    rho_best = best_diag
    res_best = np.inf
    since_best = 0
    for it in range(1, max_iter + 1):
        w = M @ v
        nw = np.linalg.norm(w)
        if nw == 0:
            return NormEstimate(max(0.0, best_diag), 0.0, it, "power")
        rho = float(np.vdot(v, w).real)
        rho_best = max(rho_best, rho)
        res = float(np.linalg.norm(w - rho * v)) / max(abs(rho), 1.0)
        if res <= tol:
            return NormEstimate(max(rho, rho_best), res, it, "power")
        # stagnation = the residual stops improving; the Rayleigh quotient
        # itself plateaus quadratically early and is no guide
        if res < 0.999 * res_best:
            res_best = res
            since_best = 0
        else:
            since_best += 1
            if since_best >= 200:
                return dense(it)
        v = w / nw
    return dense(max_iter)


# ----------------------------------------------------------------------
# the Delta norms
# ----------------------------------------------------------------------

def _family_route(spec, index, tol):
    """lambda_max via the family-side quadrature Gram: rows (member, node),
    H = A^H A with A[n, (f, j)] = member value * e^{i t_j L_n} sqrt(w_j).
    Nonzero spectrum identical to the pair-side matrix."""
    a, b = _index_arrays(index)
    L = np.log(a.astype(np.float64)) - np.log(b.astype(np.float64))
    members = family_members(spec)
    if not members:
        return NormEstimate(0.0, 0.0, 0, "dense")
    omega_max = float(np.abs(L).max()) * spec.T / 2
    nodes = max(48, int(omega_max) + 40)
    t, w = _gauss_nodes(spec.T / 2, spec.T, nodes)
    sqw = np.sqrt(w)
    F, J, n = len(members), nodes, len(index)
    H = np.zeros((F * J, F * J), dtype=np.complex128)
    block = max(1, min(n, 8 * 1024 * 1024 // (F * J)))
    vals = np.empty((n, F), dtype=np.complex128)
    for f, (q, chi, theta) in enumerate(members):
        vals[:, f] = _member_values(q, chi, theta, a, b)
    for s in range(0, n, block):
        e = min(n, s + block)
        phases = np.exp(1j * np.outer(L[s:e], t)) * sqw[None, :]
        A = (vals[s:e, :, None] * phases[:, None, :]).reshape(e - s, F * J)
        H += A.conj().T @ A
    H = _hermitize(H)
    vals_h = np.linalg.eigvalsh(H)
    lam = float(max(vals_h[-1], 0.0))
    return NormEstimate(lam, float(np.finfo(np.float64).eps * max(lam, 1.0)), 1, "dense")


def delta(Q, k=1, T=1.0, N=1.0, tol=1e-9, parity=None, route="auto"):
    """Delta(Q, k, T, N): the multiplicative-family norm on the dyadic
    window N/2 < ab <= N, as the largest Gram eigenvalue."""
    spec = FamilySpec(Q, k, T, parity)
    index = enumerate_pairs(N, "dyadic")
    if not index or not family_members(spec):
        return NormEstimate(0.0, 0.0, 0, "dense")
    if route == "pair" or (route == "auto" and len(index) <= _PAIR_ROUTE_MAX):
        return top_eigenvalue(gram_multiplicative(spec, index), tol=tol)
    return _family_route(spec, index, tol)


def delta_add(Q, N, tol=1e-9):
    """Additive-family norm (Ramanujan-sum Gram) on the dyadic window."""
    g = gram_additive(Q, N)
    return top_eigenvalue(g, tol=tol)


def delta_rational(Q, N, tol=1e-9):
    """Rational-family norm: all q <= Q, primitive characters, columns the
    positive rationals with ht <= N."""
    g = gram_rational(Q, N)
    return top_eigenvalue(g, tol=tol)


# ----------------------------------------------------------------------
# Delta' grids
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaPrimeGrid:
    tuples: tuple  # (X, R, U, C, ell)
    values: tuple
    best: float
    best_tuple: tuple
    is_lower_bound: bool = True


def delta_prime_grid(Q, k, T, N, grid=None, tol=1e-9):
    """max over admissible tuples (X, R, U, C, ell) — X R^2 ell U <= Q^2 k T
    and X <= C — of X * Delta(R, ell, U, N/C).  A finite maximization,
    hence a lower bound for the full sup."""
    if grid is None:
        grid = default_delta_prime_grid(Q, k, T)
    budget = Q * Q * k * T
    values = []
    for X, R, U, C, ell in grid:
        if X * R * R * ell * U > budget * (1 + 1e-12) or X > C:
            raise ValueError(f"inadmissible tuple {(X, R, U, C, ell)}")
        if N / C < 1:
            values.append(0.0)
            continue
        values.append(X * delta(R, ell, U, N / C, tol=tol).value)
    best_i = int(np.argmax(values)) if values else 0
    grid = tuple(tuple(t) for t in grid)
    return DeltaPrimeGrid(grid, tuple(values), max(values) if values else 0.0,
                          grid[best_i] if grid else ())


def default_delta_prime_grid(Q, k, T):
    """The trivial tuple plus dyadic budget-respecting shrinkages."""
    grid = [(1, Q, T, 1, k)]
    X = 4
    R = Q / 2
    while R >= 1:
        grid.append((X, R, T, X, k))
        X *= 4
        R /= 2
    return [(x, r, u, c, l) for (x, r, u, c, l) in
            [(g[0], g[1], g[2], g[3], g[4]) for g in grid]]


# ----------------------------------------------------------------------
# monotonicity
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityResult:
    aspect: str
    Q: float
    k: int
    T: float
    N: float
    P: int
    conditions_met: bool
    conditions: dict
    base: float
    values: dict
    witness: int | None

    @property
    def ok(self):
        return self.witness is not None


def _n_aspect_conditions(Q, N, P):
    pstar = len(primes_in(P, 2 * P))
    c1 = pstar * log(P) >= 2 * log(Q)
    c2 = 4 * log(N) <= 0.5 * pstar * log(P) if N > 1 else True
    return {"P*": pstar, "P*logP>=2logQ": c1, "4logN<=P*logP/2": c2}, c1 and c2


def _q_aspect_conditions(Q, N, P):
    pss = sum(p - 2 for p in primes_in(P, 2 * P))
    logp = log(P)
    c1 = 2 * P * log(N) <= 0.5 * pss * logp if N > 1 else True
    c2 = 4 * P * log(Q) <= 0.5 * pss * logp
    return {"P**": pss, "2PlogN<=P**logP/2": c1, "4PlogQ<=P**logP/2": c2}, c1 and c2


def monotonicity_check_N(Q, k, T, N, P, tol=1e-6):
    """Search [P, 2P] for a prime p with Delta(Q,k,T,N) <= 8 Delta(Q,k,T,Np).
    The preconditions gate the assertion, not the search; primes dividing k
    are skipped (the enlarged window needs p in the family's unit group)."""
    conds, met = _n_aspect_conditions(Q, N, P)
    base = delta(Q, k, T, N, tol=tol).value
    values = {}
    witness = None
    for p in primes_in(P, 2 * P):
        if k % p == 0:
            continue
        values[p] = delta(Q, k, T, N * p, tol=tol).value
        if base <= 8 * values[p] * (1 + 10 * tol) + 1e-12:
            witness = p
            break
    return MonotonicityResult("N", Q, k, T, N, P, met, conds, base, values, witness)


def monotonicity_check_Q(Q, k, T, N, P, tol=1e-6):
    """Same in the Q aspect: some prime p in [P, 2P] with
    Delta(Q,k,T,N) <= 8 Delta(Qp,k,T,N)."""
    conds, met = _q_aspect_conditions(Q, N, P)
    base = delta(Q, k, T, N, tol=tol).value
    values = {}
    witness = None
    for p in primes_in(P, 2 * P):
        if k % p == 0:
            continue
        values[p] = delta(Q * p, k, T, N, tol=tol).value
        if base <= 8 * values[p] * (1 + 10 * tol) + 1e-12:
            witness = p
            break
    return MonotonicityResult("Q", Q, k, T, N, P, met, conds, base, values, witness)


# ----------------------------------------------------------------------
# duality, fits, export
# ----------------------------------------------------------------------

def duality_check(rows, cols, mat, tol=1e-9):
    """lambda_max of mat^H mat and of mat mat^H — equal operator norms of a
    matrix and its transpose."""
    mat = np.asarray(mat, dtype=np.complex128)
    g1 = _hermitize(mat.conj().T @ mat)
    g2 = _hermitize(mat @ mat.conj().T)
    v1 = top_eigenvalue(g1, tol=tol).value
    v2 = top_eigenvalue(g2, tol=tol).value
    return v1, v2


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float


def exponent_fit(samples):
    """Least-squares slope of log(value) against log(parameter)."""
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    x = np.array([s[0] for s in samples], dtype=float)
    y = np.array([s[1] for s in samples], dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("samples must be positive")
    if np.allclose(x, x[0]):
        raise ValueError("degenerate sample: all parameters equal")
    lx, ly = np.log(x), np.log(y)
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, intercept), res, *_ = np.linalg.lstsq(A, ly, rcond=None)
    fitted = A @ np.array([slope, intercept])
    rms = float(np.sqrt(np.mean((fitted - ly) ** 2)))
    return FitResult(float(slope), float(intercept), rms)


_MAGIC = b"SLGM"


def save_gram(path, gram):
    """Binary dump: 16-byte header (magic 'SLGM', u32 dim, u64 reserved),
    then row-major little-endian interleaved re/im float64."""
    M = np.ascontiguousarray(gram.matrix, dtype=np.complex128)
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IQ", M.shape[0], 0))
        fh.write(M.astype("<c16").tobytes("C"))


def load_gram(path):
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ValueError("not a Gram dump")
        dim, _ = struct.unpack("<IQ", fh.read(12))
        data = np.frombuffer(fh.read(), dtype="<c16").reshape(dim, dim)
    return GramMatrix(tuple(range(dim)), data.astype(np.complex128))


def save_gram_csv(path, gram):
    """Entry-per-line CSV for small matrices: i, j, re, im."""
    if gram.dim > 64:
        raise ValueError("CSV export is for small matrices (dim <= 64)")
    with open(path, "w") as fh:
        fh.write("i,j,re,im\n")
        for i in range(gram.dim):
            for j in range(gram.dim):
                z = gram.matrix[i, j]
                fh.write(f"{i},{j},{float(z.real)!r},{float(z.imag)!r}\n")
