"""Spectral singularities of the truncated exponential slab.

A spectral singularity is a real wavenumber where M22 vanishes, i.e. the
transmission amplitude has a pole (the lasing-threshold condition of the
optical realization).  From the closed-form denominator this happens
exactly when

    a^2 J_{-gamma+1}(a) J_{gamma+1}(a) = 4 gamma sin(pi gamma)
                                         / (pi (1 - e^{2 pi i m gamma})),

solved here by Newton's method in the complex coupling parameter a.  For
integer gamma = n the right-hand side reduces to -2in/(pi m) and a good
seed is a ~ 2 [n!(n+1)!/(2 pi i m)]^{1/(2n+2)} with the root branch chosen
so that Re eps0 > 1.

Half-integer gamma = p + 1/2 admits a trigonometric closed form; following
the published reduction this module solves

    4 a^3 j_{p+1}(a) j_{-p}(a) = (-1)^p (2p + 1)

(spherical Bessel j).  CAUTION: that printed reduction disagrees with the
general condition above by a factor of 2 on the left-hand side (the
self-consistent form has 2 a^3, as direct substitution of
J_{p+1/2} = sqrt(2w/pi) j_p shows, and only the 2 a^3 roots drive the
numerically integrated |M22| to zero).  ``solve_half_integer`` keeps the
printed equation so its p = 0 solution reproduces the tabulated
eps0 = 4.127542; ``solve_general`` at gamma = p + 1/2 yields the
ODE-validated root instead (eps0 = 5.265622 at p = 0, m = 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .bessel import bessel_j, bessel_j_derivative, sinpi
from .errors import ConvergenceError, DomainError, NoSolutionError
from .potential import INTEGER_SNAP_EPS, PotentialSpec
from .transfer import SampledPotential, transfer_matrix

#: Defining-equation residual required of every returned root.
RESIDUAL_TOL = 1e-10
#: Pairwise distance in a below which two roots are considered the same.
DEDUP_TOL = 1e-6
#: |M22| bound used when the direct evolution validates a root.
ODE_M22_TOL = 1e-8

_MAX_NEWTON = 100


@dataclass(frozen=True)
class SingularitySolution:
    a_frak: complex
    eps0: complex
    gamma: float
    m: int
    residual: float

    def as_record(self) -> dict:
        return {
            "gamma": self.gamma,
            "m": self.m,
            "a_re": self.a_frak.real,
            "a_im": self.a_frak.imag,
            "eps0_re": self.eps0.real,
            "eps0_im": self.eps0.imag,
            "residual": self.residual,
        }


def _eps0_of(a: complex, gamma: float) -> complex:
    return 1.0 - a * a / (gamma * gamma)


def _rhs_general(gamma: float, m: int) -> complex:
    """4 gamma sin(pi gamma) / (pi (1 - e^{2 pi i m gamma})), compensated."""
    n = round(gamma)
    delta = gamma - n
    if abs(delta) < INTEGER_SNAP_EPS:
        raise DomainError("integer gamma: use solve_integer_gamma")
    eta = m * gamma - round(m * gamma)
    if abs(eta) < INTEGER_SNAP_EPS:
        raise NoSolutionError(
            "kL is a multiple of pi with non-integer gamma (mu = 0): T = 1 "
            "identically, no spectral singularity exists there")
    sp = math.sin(math.pi * eta)
    one_minus_e = complex(2.0 * sp * sp, -math.sin(2.0 * math.pi * eta))
    return 4.0 * gamma * sinpi(gamma) / (math.pi * one_minus_e)


def _newton(f: Callable[[complex], complex],
            df: Callable[[complex], complex],
            seed: complex, scale: float) -> tuple[complex, float]:
    a = complex(seed)
    trail = [a]
    for _ in range(_MAX_NEWTON):
        fa = f(a)
        if abs(fa) < 1e-13 * scale:
            return a, abs(fa)
        d = df(a)
        if abs(d) < 1e-14:
            # Analytic derivative stalled; central difference restores a step.
            h = 1e-6 * (1.0 + abs(a))
            d = (f(a + h) - f(a - h)) / (2.0 * h)
            if abs(d) < 1e-14:
                raise ConvergenceError(f"derivative vanished at a={a!r}")
        step = fa / d
        a = a - step
        trail.append(a)
        if abs(step) < 5e-16 * (1.0 + abs(a)):
            fa = f(a)
            return a, abs(fa)
    raise ConvergenceError(
        f"Newton did not converge from seed {seed!r}; trajectory tail "
        f"{[format(t, '.6g') for t in trail[-4:]]}")


def _canonical(a: complex) -> complex:
    if a.real < 0 or (a.real == 0 and a.imag < 0):
        return -a
    return a


def solve_general(gamma: float, m: int, seed: complex) -> SingularitySolution:
    """Newton solve of the full singularity condition at non-integer gamma."""
    if m < 1:
        raise DomainError("m must be a positive integer")
    rhs = _rhs_general(gamma, m)
    g = float(gamma)

    def f(a: complex) -> complex:
        return a * a * bessel_j(-g + 1.0, a) * bessel_j(g + 1.0, a) - rhs

    def df(a: complex) -> complex:
        jm = bessel_j(-g + 1.0, a)
        jp = bessel_j(g + 1.0, a)
        return (2.0 * a * jm * jp
                + a * a * bessel_j_derivative(-g + 1.0, a) * jp
                + a * a * jm * bessel_j_derivative(g + 1.0, a))

    root, residual = _newton(f, df, seed, scale=max(1.0, abs(rhs)))
    if residual > RESIDUAL_TOL:
        raise ConvergenceError(f"root residual {residual:.2e} above {RESIDUAL_TOL:.1e}")
    root = _canonical(root)
    return SingularitySolution(a_frak=root, eps0=_eps0_of(root, g),
                               gamma=g, m=int(m), residual=residual)


def solve_integer_gamma(n: int, m: int) -> SingularitySolution:
    """Singularity at gamma = n from a^2 J_{n-1}(a) J_{n+1}(a) = -2in/(pi m).

    Seeds every (2n+2)-th root branch of the leading-order solution, keeps
    the branches with Re eps0 > 1, Newton-refines each and returns the
    smallest-residual root (canonicalized to Re a >= 0; the condition is
    even in a).
    """
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive integers")
    rhs = -2j * n / (math.pi * m)

    def f(a: complex) -> complex:
        return a * a * bessel_j(n - 1.0, a) * bessel_j(n + 1.0, a) - rhs

    def df(a: complex) -> complex:
        jm = bessel_j(n - 1.0, a)
        jp = bessel_j(n + 1.0, a)
        return (2.0 * a * jm * jp
                + a * a * bessel_j_derivative(n - 1.0, a) * jp
                + a * a * jm * bessel_j_derivative(n + 1.0, a))

    order = 2 * n + 2
    base = math.factorial(n) * math.factorial(n + 1) / (2.0 * math.pi * m)
    radius = 2.0 * base ** (1.0 / order)
    # arg of n!(n+1)!/(2 pi i m) is -pi/2
    candidates = []
    for j in range(order):
        seed = radius * cmath.exp(1j * (-0.5 * math.pi + 2.0 * math.pi * j) / order)
        if _eps0_of(seed, float(n)).real <= 1.0:
            continue
        try:
            root, residual = _newton(f, df, seed, scale=max(abs(rhs), 1e-6))
        except ConvergenceError:
            continue
        if residual <= RESIDUAL_TOL:
            root = _canonical(root)
            candidates.append((residual, root.real, root.imag, root))
    if not candidates:
        raise ConvergenceError(
            f"no branch converged for n={n}, m={m} (seed radius {radius:.4g})")
    candidates.sort(key=lambda item: item[:3])
    residual, _, _, root = candidates[0]
    return SingularitySolution(a_frak=root, eps0=_eps0_of(root, float(n)),
                               gamma=float(n), m=int(m), residual=residual)


def seed_integer_gamma(n: int, m: int) -> complex:
    """Leading-order seed with the branch fixed by Re eps0 > 1, Re a >= 0."""
    order = 2 * n + 2
    base = math.factorial(n) * math.factorial(n + 1) / (2.0 * math.pi * m)
    radius = 2.0 * base ** (1.0 / order)
    best = None
    for j in range(order):
        seed = _canonical(radius * cmath.exp(1j * (-0.5 * math.pi + 2.0 * math.pi * j) / order))
        if _eps0_of(seed, float(n)).real > 1.0 and seed.real >= 0:
            if best is None or seed.real > best.real:
                best = seed
    if best is None:
        raise NoSolutionError(f"no seed branch with Re eps0 > 1 for n={n}, m={m}")
    return best


def _spherical_j(n: int, w: complex) -> complex:
    """Spherical Bessel j_n for integer n (either sign) from the trig forms."""
    if w == 0:
        raise DomainError("spherical j evaluated at 0")
    j0 = cmath.sin(w) / w
    if n == 0:
        return j0
    jm1 = cmath.cos(w) / w  # j_{-1}
    if n > 0:
        prev, cur = jm1, j0
        for q in range(0, n):
            prev, cur = cur, (2 * q + 1) / w * cur - prev
        return cur
    prev, cur = j0, jm1  # descending: j_{q-1} = (2q+1)/w j_q - j_{q+1}
    q = -1
    while q > n:
        prev, cur = cur, (2 * q + 1) / w * cur - prev
        q -= 1
    return cur


def half_integer_residual(p: int, a: complex) -> complex:
    """LHS - RHS of the printed half-integer reduction at gamma = p + 1/2."""
    return 4.0 * a ** 3 * _spherical_j(p + 1, a) * _spherical_j(-p, a) \
        - (-1.0) ** p * (2 * p + 1)


def solve_half_integer(p: int, m: int, scan_max: float = 12.0) -> SingularitySolution:
    """Real-permittivity root of the printed half-integer closed form.

    Requires odd m (for even m the interference factor makes the condition
    unsatisfiable).  Scans the imaginary-a axis (eps0 > 1) and the real-a
    segment below gamma (eps0 in (0,1)) for sign changes and refines the
    first root found; see the module docstring for the factor-2 caveat
    against the general condition.
    """
    if m < 1 or m % 2 == 0:
        raise DomainError("the half-integer closed form requires odd m")
    if p < 0:
        raise DomainError("p must be >= 0 (gamma = p + 1/2 must be positive)")
    gamma = p + 0.5

    roots: list[complex] = []

    def scan(func: Callable[[float], float], to_a: Callable[[float], complex],
             lo: float, hi: float, steps: int) -> None:
        prev_t, prev_f = lo, func(lo)
        for i in range(1, steps + 1):
            t = lo + (hi - lo) * i / steps
            ft = func(t)
            if prev_f == 0.0:
                roots.append(to_a(prev_t))
            elif prev_f * ft < 0.0:
                t_root = _bisect(func, prev_t, t)
                roots.append(to_a(t_root))
            prev_t, prev_f = t, ft

    # Imaginary axis a = ib: the residual is real there.
    scan(lambda b: half_integer_residual(p, 1j * b).real,
         lambda b: 1j * b, 1e-3, scan_max, 400)
    # Real axis below gamma keeps eps0 positive.
    if gamma > 2e-3:
        scan(lambda t: half_integer_residual(p, complex(t)).real,
             lambda t: complex(t), 1e-3, gamma - 1e-9, 200)

    for root in roots:
        eps0 = _eps0_of(root, gamma)
        if abs(eps0.imag) < 1e-12 and eps0.real > 0:
            residual = abs(half_integer_residual(p, root))
            if residual > RESIDUAL_TOL:
                raise ConvergenceError(f"half-integer root residual {residual:.2e}")
            return SingularitySolution(a_frak=_canonical(root), eps0=eps0,
                                       gamma=gamma, m=int(m), residual=residual)
    raise NoSolutionError(
        f"no real positive-eps0 solution of the half-integer form for p={p} "
        f"within the scanned window (0, {scan_max}]")


def _bisect(func: Callable[[float], float], lo: float, hi: float) -> float:
    flo = func(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = func(mid)
        if fm == 0.0 or hi - lo < 1e-15 * (1.0 + abs(mid)):
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def validate_root_ode(sol: SingularitySolution, tol: float = 1e-10) -> float:
    """|M22| from the direct evolution at the root's configuration."""
    L = math.pi * sol.m  # k0 = 1 in these units
    spec = PotentialSpec(coupling=sol.a_frak ** 2, m=sol.m, L=L)
    M = transfer_matrix(SampledPotential.from_spec(spec), k=sol.gamma, tol=tol)
    return abs(M.m22)


def scan_singularities(gamma: float, m: int,
                       re_max: float = 2.0, im_max: float = 2.0,
                       grid: tuple[int, int] = (6, 7),
                       validate: bool = True) -> list[SingularitySolution]:
    """Grid-seeded sweep for roots of the singularity condition.

    Seeds Newton from a rectangular grid in the right half a-plane,
    deduplicates converged roots and (optionally) keeps only those whose
    directly integrated |M22| falls below ODE_M22_TOL.  Deterministic
    ordering by (Re a, Im a).
    """
    if m < 1:
        raise DomainError("m must be a positive integer")
    n = round(gamma)
    integer = abs(gamma - n) < INTEGER_SNAP_EPS

    solutions: list[SingularitySolution] = []
    n_re, n_im = grid
    for i in range(n_re):
        re = re_max * (i + 1) / n_re
        for j in range(n_im):
            im = -im_max + 2.0 * im_max * j / max(n_im - 1, 1)
            seed = complex(re, im)
            try:
                if integer:
                    sol = _integer_from_seed(int(n), m, seed)
                else:
                    sol = solve_general(gamma, m, seed)
            except (ConvergenceError, NoSolutionError, DomainError):
                continue
            if abs(sol.a_frak) < 1e-8:
                continue
            if any(abs(sol.a_frak - s.a_frak) < DEDUP_TOL for s in solutions):
                continue
            if validate and validate_root_ode(sol) > ODE_M22_TOL:
                continue
            solutions.append(sol)
    solutions.sort(key=lambda s: (s.a_frak.real, s.a_frak.imag))
    return solutions


def _integer_from_seed(n: int, m: int, seed: complex) -> SingularitySolution:
    rhs = -2j * n / (math.pi * m)

    def f(a: complex) -> complex:
        return a * a * bessel_j(n - 1.0, a) * bessel_j(n + 1.0, a) - rhs

    def df(a: complex) -> complex:
        jm = bessel_j(n - 1.0, a)
        jp = bessel_j(n + 1.0, a)
        return (2.0 * a * jm * jp
                + a * a * bessel_j_derivative(n - 1.0, a) * jp
                + a * a * jm * bessel_j_derivative(n + 1.0, a))

    root, residual = _newton(f, df, seed, scale=max(abs(rhs), 1e-6))
    if residual > RESIDUAL_TOL:
        raise ConvergenceError(f"residual {residual:.2e} above tolerance")
    root = _canonical(root)
    return SingularitySolution(a_frak=root, eps0=_eps0_of(root, float(n)),
                               gamma=float(n), m=int(m), residual=residual)


def table1_rows(ms: tuple[int, ...] = (100, 250, 500)) -> list[SingularitySolution]:
    """The n = 1 singularity for each requested cell count."""
    return [solve_integer_gamma(1, m) for m in ms]
