"""Verification suites: exact invariant checks grouped by subsystem.

Every check returns a :class:`CheckResult`. Mandatory checks decide the exit
status; findings record candidate-selection outcomes and diagnostics.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import braided_maps as bm
from . import derivative_actions as da
from . import lattice as lt
from . import qexponential as qe
from .quantum_algebra import (METRIC, NCPoly, matrix_is_zero, nc_conjugate, nc_mul, normal_order, random_word,
                              unweyl, uqsu2_relation_residuals, weyl)
from .scalars import LAMBDA, ONE, Gaussian, QScalar
from .series import CPoly, conjugate_series, monomials_up_to, power_product, random_cpoly, var
from .star_product import star
from .text import render_cpoly, render_ncpoly

__all__ = ["Config", "CheckResult", "SUITES", "run_suite", "run_suites", "parse_config", "ConfigError"]

PASS, FAIL, FINDING = "pass", "fail", "finding"


class ConfigError(ValueError):
    """Malformed configuration text."""


@dataclass
class Config:
    q0: Fraction = Fraction(11, 10)
    seed: int = 2024
    deg: int = 6
    assoc_samples: int = 200
    conj_samples: int = 200
    braid_deg: int = 5
    uhat_deg: int = 4
    caps: Tuple[int, ...] = (3, 4, 5)
    addition_cap: int = 3
    J: int = 10
    M: int = 4
    stokes_samples: int = 50
    byparts_samples: int = 20
    expect_states: int = 10
    windows: Tuple[int, ...] = (8, 10, 12)
    suites: Tuple[str, ...] = ()


def _coerce(name: str, raw: str, current):
    if isinstance(current, Fraction):
        return Fraction(raw)
    if isinstance(current, tuple):
        items = [s.strip() for s in raw.split(",") if s.strip()]
        return tuple(items) if name == "suites" else tuple(int(s) for s in items)
    return int(raw)


def parse_config(text: str, base: Optional[Config] = None) -> Config:
    """Read flat ``key = value`` lines; ``#`` starts a comment."""
    cfg = base or Config()
    known = {f.name: f for f in fields(Config)}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {n}: unknown key {key!r}")
        try:
            setattr(cfg, key, _coerce(key, raw, getattr(cfg, key)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"line {n}: bad value for {key}: {raw!r}") from exc
    return cfg


@dataclass
class CheckResult:
    suite: str
    check_id: str
    anchor: str
    status: str
    residual: Optional[str]
    runtime_ms: Optional[int]
    mandatory: bool = True
    detail: str = ""

    def to_json(self, timing: bool = True) -> dict:
        d = asdict(self)
        out = {"suite": d["suite"], "check-id": d["check_id"], "paper-anchor": d["anchor"],
               "status": d["status"], "residual": d["residual"],
               "runtime-ms": d["runtime_ms"] if timing else None, "mandatory": d["mandatory"]}
        if self.detail:
            out["detail"] = self.detail
        return out


# a check body returns (ok, residual text or None, detail)
Outcome = Tuple[bool, Optional[str], str]


@dataclass
class _Check:
    check_id: str
    anchor: str
    body: Callable[[Config], Outcome]
    mandatory: bool = True


def _first_bad(pairs) -> Outcome:
    """``pairs`` yields (label, residual polynomial); stop at the first nonzero."""
    n = 0
    for label, res in pairs:
        n += 1
        if res:
            return False, _render(res), f"first failure at {label}"
    return True, "0", f"{n} cases"


def _render(x) -> str:
    if isinstance(x, CPoly):
        return render_cpoly(x)
    if isinstance(x, NCPoly):
        return render_ncpoly(x)
    return str(x)


# --------------------------------------------------------------------------
# algebra
# --------------------------------------------------------------------------


def _uqsu2(cfg: Config) -> Outcome:
    for j in (0, Fraction(1, 2), 1, Fraction(3, 2), 2):
        for k, m in enumerate(uqsu2_relation_residuals(j)):
            if not matrix_is_zero(m):
                return False, "nonzero matrix", f"relation {k} at j = {j}"
    return True, "0", "j in 0..2"


def _confluence(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed)

    def cases():
        for n in range(100):
            w = NCPoly.word(*random_word(rng, rng.randint(2, 6)))
            yield n, normal_order(w) - normal_order(w, random.Random(n))

    return _first_bad(cases())


def _weyl_roundtrip(cfg: Config) -> Outcome:
    return _first_bad((e, unweyl(weyl(power_product(e))) - power_product(e)) for e in monomials_up_to(4))


def _nc_conj_anti(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 1)

    def cases():
        for n in range(50):
            a = NCPoly.word(*random_word(rng, rng.randint(0, 3))).scale(QScalar.const(Gaussian(1, n % 3)))
            b = NCPoly.word(*random_word(rng, rng.randint(0, 3)))
            lhs = normal_order(nc_conjugate(nc_mul(a, b)))
            yield n, lhs - nc_mul(nc_conjugate(b), nc_conjugate(a))
            yield n, normal_order(nc_conjugate(nc_conjugate(a))) - normal_order(a)

    return _first_bad(cases())


# --------------------------------------------------------------------------
# star product
# --------------------------------------------------------------------------


def _star_oracle(cfg: Config) -> Outcome:
    mons = monomials_up_to(cfg.deg)

    def cases():
        for a in mons:
            fa = power_product(a)
            wa = weyl(fa)
            for b in mons:
                if sum(a) + sum(b) > cfg.deg:
                    continue
                fb = power_product(b)
                yield (a, b), star(fa, fb) - unweyl(nc_mul(wa, weyl(fb)))

    return _first_bad(cases())


def _star_assoc(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 2)

    def cases():
        for n in range(cfg.assoc_samples):
            f, g, h = (random_cpoly(rng, 3, n_terms=3) for _ in range(3))
            yield n, star(star(f, g), h) - star(f, star(g, h))

    return _first_bad(cases())


def _star_conj(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 3)

    def cases():
        for n in range(cfg.conj_samples):
            f, g = random_cpoly(rng, 3, n_terms=3), random_cpoly(rng, 3, n_terms=3)
            c = conjugate_series
            yield n, c(star(f, g)) - star(c(g), c(f))
            yield n, unweyl(nc_conjugate(weyl(f))) - c(f)

    return _first_bad(cases())


def _star_commutator(cfg: Config) -> Outcome:
    xp, x3, xm = var(0), var(1), var(2)
    q2 = QScalar.monomial(2)
    return _first_bad([
        ("x3 x+", star(x3, xp) - star(xp, x3).scale(q2)),
        ("x- x3", star(xm, x3) - star(x3, xm).scale(q2)),
        ("x- x+", star(xm, xp) - star(xp, xm) - star(x3, x3).scale(LAMBDA)),
    ])


# --------------------------------------------------------------------------
# translations and inversions
# --------------------------------------------------------------------------


def _coassoc(tr):
    def body(cfg: Config) -> Outcome:
        def cases():
            for e in monomials_up_to(cfg.braid_deg):
                t = tr(power_product(e), "x", ("x", "y"))
                left = tr(t, "x", ("x", "z")).rename({"z": "b", "y": "c", "x": "a"})
                right = tr(t, "y", ("y", "w")).rename({"y": "b", "w": "c", "x": "a"})
                yield e, left - right

        return _first_bad(cases())

    return body


def _counit(tr):
    def body(cfg: Config) -> Outcome:
        def cases():
            for e in monomials_up_to(cfg.braid_deg):
                f = power_product(e)
                t = tr(f, "x", ("x", "y"))
                yield e, t.drop_slot("y") - f
                yield e, t.drop_slot("x").rename({"y": "x"}) - f

        return _first_bad(cases())

    return body


def _antipode(bar: bool):
    def body(cfg: Config) -> Outcome:
        return _first_bad((e, bm.antipode_residual(power_product(e), bar=bar))
                          for e in monomials_up_to(min(cfg.braid_deg, 4)))

    return body


def _translate_conj(cfg: Config) -> Outcome:
    def cases():
        for e in monomials_up_to(cfg.braid_deg):
            f = power_product(e)
            lhs = conjugate_series(bm.translate(f))
            rhs = bm.translate(conjugate_series(f)).rename({"x": "y", "y": "x"})
            yield e, lhs - rhs
            yield e, conjugate_series(bm.invert(f)) - bm.invert(conjugate_series(f))

    return _first_bad(cases())


def _uhat_inverse(cfg: Config) -> Outcome:
    def cases():
        for e in monomials_up_to(cfg.uhat_deg):
            f = power_product(e)
            yield e, bm.uhat(bm.uhat(f, -1), 1) - f
            yield e, bm.uhat(bm.uhat(f, 1), -1) - f

    return _first_bad(cases())


def _invert_linear(cfg: Config) -> Outcome:
    def cases():
        for a in range(3):
            x = var(a)
            yield a, bm.invert(x) + x
            yield a, bm.invert_bar(x) + x

    return _first_bad(cases())


# --------------------------------------------------------------------------
# derivatives
# --------------------------------------------------------------------------


def _metric_pairing(cfg: Config) -> Outcome:
    def cases():
        for a in range(3):
            for b in range(3):
                g = CPoly.one().scale(METRIC[a][b]) if METRIC[a][b] else CPoly.zero()
                for name in ("left", "left_bar"):
                    yield (name, a, b), da.ACTIONS[name](a, var(b), upper=True) - g
                gt = CPoly.one().scale(METRIC[b][a]) if METRIC[b][a] else CPoly.zero()
                yield ("right_bar", a, b), da.d_right_bar(a, var(b), upper=True) + gt
                # the Leibniz-paired right action carries the lattice factor q^-6
                paired = da.d_right_paired(a, var(b), upper=True)
                yield ("right_paired", a, b), paired + gt.scale(QScalar.monomial(-6))

    return _first_bad(cases())


def _relation_residuals(kind: str, f: CPoly):
    """Coordinate relations for the operator words ``d^a d^b``.

    A left action applies ``d^b`` first; a right action applies ``d^a`` first.
    """
    op = da.ACTIONS[kind]
    q2 = QScalar.monomial(2)
    if kind.startswith("left"):
        def w(a, b):
            return op(a, op(b, f, upper=True), upper=True)
    else:
        def w(a, b):
            return op(b, op(a, f, upper=True), upper=True)
    yield w(1, 0) - w(0, 1).scale(q2)
    yield w(2, 1) - w(1, 2).scale(q2)
    yield w(2, 0) - w(0, 2) - w(1, 1).scale(LAMBDA)


def _derivative_relations(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 4)

    def cases():
        for n in range(20):
            f = random_cpoly(rng, 4, n_terms=4)
            for kind in da.ACTIONS:
                for r in _relation_residuals(kind, f):
                    yield (kind, n), r

    return _first_bad(cases())


def _leibniz(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 5)
    m = da.leibniz_matrix()

    def cases():
        for n in range(20):
            f = random_cpoly(rng, 3, n_terms=3)
            for i in range(3):
                for j in range(3):
                    lhs = da.d_left(i, star(var(j), f), upper=True)
                    rhs = f.scale(METRIC[i][j]) if METRIC[i][j] else CPoly.zero()
                    for (a, b, k, l_), c in m.items():
                        if (a, b) == (i, j):
                            rhs = rhs + star(var(k), da.d_left(l_, f, upper=True)).scale(c)
                    yield (n, i, j), lhs - rhs

    return _first_bad(cases())


def _derivative_examples(cfg: Config) -> Outcome:
    x3 = var(1)
    sq = x3 * x3
    q = QScalar.monomial
    return _first_bad([
        ("d3 > x3^2", da.d_left(1, sq) - x3.scale(q(2) + ONE)),
        ("d- > x3^2", da.d_left(2, sq) - var(0).scale(q(3) - q(-1))),
        ("x3 <bar d3", da.d_right_bar(1, x3) + CPoly.one()),
        ("d- >bar x-", da.d_left_bar(2, var(2)) - CPoly.one()),
    ])


# --------------------------------------------------------------------------
# q-exponentials
# --------------------------------------------------------------------------


def _eigen(cfg: Config) -> Outcome:
    for cap in cfg.caps:
        for side, maker in (("left", qe.exp_xp), ("right", qe.exp_px)):
            for a in range(3):
                r = qe.eigen_residual(maker(cap), a, side)
                if not r.vanishes_below_cap():
                    return False, _render(r.below()), f"cap {cap}, side {side}, axis {a}"
    return True, "0", f"caps {list(cfg.caps)}"


def _lowest(r: qe.XPSeries) -> str:
    low = r.lowest_term()
    return "" if low is None else f"lowest term {low[0]}: {low[1]}"


def _addition(cfg: Config) -> Outcome:
    r = qe.addition_residual(cfg.addition_cap)
    if r.vanishes_below_cap():
        return True, "0", "barred translation selected"
    return False, _render(r.below()), "barred translation rejected; " + _lowest(r)


def _inversion(cfg: Config) -> Outcome:
    r = qe.inversion_residual(cfg.addition_cap)
    if r.vanishes_below_cap():
        return True, "0", "barred inversion selected"
    return False, _render(r.below()), "barred inversion rejected; " + _lowest(r)


def _exp_conj(cfg: Config) -> Outcome:
    cap = cfg.addition_cap
    return _first_bad([(cap, conjugate_series(qe.exp_xp(cap).poly) - qe.exp_px(cap).poly)])


def _dual_exp(cfg: Config) -> Outcome:
    cap = cfg.addition_cap
    p = qe.dual_exp_recursive(cap, cfg.q0).poly
    iu = QScalar.const(Gaussian(0, 1))
    for a in range(3):
        lhs = da.d_left_bar(a, p, "x", upper=True)
        rhs = star(p, var(a, "p"), "p").scale(iu)
        res = (lhs - rhs).truncate("p", cap - 1)
        bad = [k for k, v in res.terms.items() if v.evaluate(cfg.q0)]
        if bad:
            return False, f"{len(bad)} nonzero terms", f"axis {a}"
    return True, "0", f"cap {cap} at q0 = {cfg.q0}"


# --------------------------------------------------------------------------
# lattice
# --------------------------------------------------------------------------


def _window(cfg: Config, J: Optional[int] = None, **kw) -> lt.LatticeWindow:
    return lt.LatticeWindow(q0=cfg.q0, J=cfg.J if J is None else J, M=cfg.M, **kw)


def jackson_line_residuals(q0: Fraction, x0: Fraction = Fraction(3, 2), terms: int = 40):
    """``int_0^x0 z d_q z - x0^2/(q+1)`` symbolically and at ``q0``.

    The numeric sum is truncated after ``terms`` points and completed with
    its exact geometric tail.
    """
    from .series import jackson_antiderivative

    prim = jackson_antiderivative(var(1), "x", 1, 1)
    symbolic = prim.coefficient((0, 2, 0)) - (ONE + QScalar.monomial(1)).inverse()
    part = lt.jackson_integral_line(lambda z: Gaussian(z), x0, q0, "zero_to_x", terms=terms)
    tail = (q0 - 1) * x0 * x0 * q0 ** (-2 * terms) / (q0 * q0 - 1)
    numeric = part + Gaussian(tail) - Gaussian(x0 * x0 / (q0 + 1))
    return symbolic, numeric


def _jackson_line(cfg: Config) -> Outcome:
    sym, num = jackson_line_residuals(cfg.q0)
    if sym:
        return False, str(sym), "symbolic q"
    if num:
        return False, str(num), f"q0 = {cfg.q0}"
    return True, "0", f"symbolic and q0 = {cfg.q0}"


def _stokes(kinds: Sequence[str]):
    def body(cfg: Config) -> Outcome:
        w = _window(cfg)
        rng = random.Random(cfg.seed + 6)
        for n in range(cfg.stokes_samples):
            g = lt.random_compact(rng, w, 10)
            for kind in kinds:
                for a in range(3):
                    r = lt.stokes_residual(kind, a, g)
                    if r:
                        return False, str(r), f"{kind}, axis {a}, sample {n}"
        return True, "0", f"{cfg.stokes_samples} functions, J = {cfg.J}, M = {cfg.M}"

    return body


def _by_parts(kind: str):
    def body(cfg: Config) -> Outcome:
        w = _window(cfg)
        rng = random.Random(cfg.seed + 7)
        for n in range(cfg.byparts_samples):
            f = random_cpoly(rng, 2, n_terms=3)
            g = lt.random_compact(rng, w, 10, radius=w.inner - 4)
            for a in range(3):
                r = lt.by_parts_residual(kind, a, f, g)
                if r:
                    return False, str(r), f"axis {a}, sample {n}"
        return True, "0", f"{cfg.byparts_samples} pairs with the {kind} action"

    return body


def _cross_rep(cfg: Config) -> Outcome:
    w = _window(cfg, J=8)
    rng = random.Random(cfg.seed + 8)
    center = (1, 0, 1, 0, -1, 0)
    pts = list(lt.stencil(center, 1))

    def first_diff(lat, ref):
        return next((p for p in pts if lat(p) != ref(p)), None)

    for n in range(3):
        f = random_cpoly(rng, 3, n_terms=4)
        # second x3 differences reach four steps beyond the compared points
        g = lt.sample(f, w, indices=lt.stencil(center, 5))
        for kind in ("left", "left_bar", "right_bar", "right"):
            for a in range(3):
                lat = lt.action_lattice(kind, a, g, upper=True)
                ref = lt.sample(da.ACTIONS[kind](a, f, upper=True), w, indices=pts)
                p = first_diff(lat, ref)
                if p is not None:
                    return False, str(lat(p) - ref(p)), f"{kind}, axis {a}"
        h = random_cpoly(rng, 2, n_terms=2)
        for side in ("left", "right"):
            lat = lt.star_poly_lattice(h, g, side)
            ref = lt.sample(star(h, f) if side == "left" else star(f, h), w, indices=pts)
            p = first_diff(lat, ref)
            if p is not None:
                return False, str(lat(p) - ref(p)), f"star, polynomial on the {side}"
    return True, "0", "3 polynomials on a stencil"


# --------------------------------------------------------------------------
# expectation values
# --------------------------------------------------------------------------


def even_state(rng: random.Random) -> CPoly:
    """Random state with only even powers of ``x3``."""
    f = random_cpoly(rng, 3, n_terms=5)
    return CPoly({e: c for e, c in f.terms.items() if e[1] % 2 == 0}, f.slots)


def _x3_even(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 9)
    for n in range(cfg.expect_states):
        psi = even_state(rng)
        for J in cfg.windows:
            v = lt.expectation("X3", psi, _window(cfg, J=J))
            if v:
                return False, str(v), f"state {n}, J = {J}"
    return True, "0", f"{cfg.expect_states} even states"


def imaginary_ratios(cfg: Config, **window_kw) -> List[List[Tuple[Fraction, ...]]]:
    """Squared ratios ``(Im <X^i> / |<1>|)^2`` per state, window and component."""
    rng = random.Random(cfg.seed + 10)
    out = []
    for _ in range(cfg.expect_states):
        psi = random_cpoly(rng, 2, n_terms=4)
        rows = []
        for J in cfg.windows:
            w = _window(cfg, J=J, **window_kw)
            n1 = lt.expectation(1, psi, w)
            norm2 = n1.re * n1.re + n1.im * n1.im
            rows.append(tuple(lt.expectation(f"X{i}", psi, w).im ** 2 / norm2 if norm2 else Fraction(0)
                              for i in (1, 2, 3)))
        out.append(rows)
    return out


def _imag_trend(conjugate_bases: bool):
    def body(cfg: Config) -> Outcome:
        ratios = imaginary_ratios(cfg, conjugate_bases=conjugate_bases)
        for n, rows in enumerate(ratios):
            for prev, cur in zip(rows, rows[1:]):
                if any(c > p for p, c in zip(prev, cur)):
                    return False, str(max(cur)), f"state {n}: ratio grows with the window"
        worst = max((v for rows in ratios for r in rows for v in r), default=Fraction(0))
        return True, str(worst), "non-increasing across windows; residual is the largest squared ratio"

    return body


def _norm_real(cfg: Config) -> Outcome:
    rng = random.Random(cfg.seed + 11)
    w = _window(cfg)
    for n in range(cfg.expect_states):
        v = lt.expectation(1, random_cpoly(rng, 2, n_terms=4), w)
        if v.im:
            return False, str(v.im), f"state {n}"
    return True, "0", "<1> is real"


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

SUITES: Dict[str, List[_Check]] = {
    "algebra": [
        _Check("uqsu2-relations", "Eq. U_q(su2) relations", _uqsu2),
        _Check("normal-order-confluence", "Eq. quantum space relations", _confluence),
        _Check("weyl-roundtrip", "Moyal-Weyl map", _weyl_roundtrip),
        _Check("conjugation-anti-involution", "quantum space conjugation", _nc_conj_anti),
    ],
    "star": [
        _Check("oracle-equivalence", "Eq. star-product formula", _star_oracle),
        _Check("associativity", "Eq. star-product formula", _star_assoc),
        _Check("conjugation", "Eq. conjugation of star products", _star_conj),
        _Check("coordinate-relations", "Eq. quantum space relations", _star_commutator),
    ],
    "translate": [
        _Check("coassociativity", "Eq. braided coproduct", _coassoc(bm.translate)),
        _Check("coassociativity-bar", "Eq. braided coproduct (hatted)", _coassoc(bm.translate_bar)),
        _Check("counit", "Eq. braided counit", _counit(bm.translate)),
        _Check("counit-bar", "Eq. braided counit (hatted)", _counit(bm.translate_bar)),
        _Check("antipode-bar", "Eq. braided antipode", _antipode(True)),
        _Check("antipode-plain", "Eq. braided antipode", _antipode(False), mandatory=False),
        _Check("conjugation-covariance", "Eq. conjugation of q-translations", _translate_conj),
        _Check("uhat-inverse", "Eq. operator U and its inverse", _uhat_inverse),
        _Check("inversion-degree-one", "Eq. q-inversion", _invert_linear),
    ],
    "derivatives": [
        _Check("metric-pairing", "Eq. derivatives on coordinates", _metric_pairing),
        _Check("operator-relations", "Eq. derivative relations", _derivative_relations),
        _Check("leibniz-rule", "Eq. Leibniz rules", _leibniz),
        _Check("worked-examples", "Eq. derivative representations", _derivative_examples),
    ],
    "exponential": [
        _Check("eigenvalue-equations", "Eq. eigenvalue equations", _eigen),
        _Check("addition-theorem", "Eq. addition theorem", _addition),
        _Check("inversion-identity", "Fig. inverse exponential", _inversion),
        _Check("conjugation", "Eq. conjugated exponential", _exp_conj),
        _Check("dual-recursive", "Eq. dual exponential", _dual_exp),
    ],
    "lattice": [
        _Check("jackson-line", "Eq. Jackson integral", _jackson_line),
        _Check("stokes", "Eq. Stokes theorem", _stokes(("left", "right_bar"))),
        _Check("stokes-hatted", "Eq. Stokes theorem", _stokes(("left_bar", "right")), mandatory=False),
        _Check("by-parts-right-bar", "Eq. integration by parts", _by_parts("right_bar"), mandatory=False),
        _Check("by-parts-right", "Eq. integration by parts", _by_parts("right"), mandatory=False),
        _Check("by-parts-right-paired", "Eq. integration by parts", _by_parts("right_paired"), mandatory=False),
        _Check("cross-representation", "Eq. derivative representations", _cross_rep),
    ],
    "expect": [
        _Check("x3-even-states", "Eq. expectation values", _x3_even),
        _Check("imaginary-part-trend", "Eq. expectation values", _imag_trend(True)),
        _Check("imaginary-part-uniform-bases", "Eq. expectation values", _imag_trend(False), mandatory=False),
        _Check("norm-real", "Eq. expectation values", _norm_real),
    ],
}

# each group is mandatory as a whole: at least one member must pass
_ANY_OF = {
    "lattice": ("by-parts", ("by-parts-right-bar", "by-parts-right", "by-parts-right-paired")),
}


def _run_check(suite: str, chk: _Check, cfg: Config) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, residual, detail = chk.body(cfg)
    except Exception as exc:  # a crash counts as a failed check
        ok, residual, detail = False, None, f"{type(exc).__name__}: {exc}"
    ms = int((time.perf_counter() - t0) * 1000)
    status = PASS if ok else (FAIL if chk.mandatory else FINDING)
    return CheckResult(suite, f"{suite}.{chk.check_id}", chk.anchor, status, residual, ms, chk.mandatory, detail)


def run_suite(name: str, cfg: Optional[Config] = None, only: Optional[Sequence[str]] = None) -> List[CheckResult]:
    """Run one suite; ``only`` restricts it to the named check ids (without the suite prefix)."""
    if name not in SUITES:
        raise KeyError(name)
    cfg = cfg or Config()
    out = [_run_check(name, c, cfg) for c in SUITES[name] if only is None or c.check_id in only]
    if name in _ANY_OF:
        gid, members = _ANY_OF[name]
        ran = [r for r in out if r.check_id.split(".", 1)[1] in members]
        if ran:
            chosen = [r.check_id.split(".", 1)[1] for r in ran if r.status == PASS]
            status = PASS if chosen else FAIL
            detail = f"passing pairings: {', '.join(chosen)}" if chosen else "no right action pairs with d_left"
            out.append(CheckResult(name, f"{name}.{gid}", "Eq. integration by parts", status,
                                   "0" if chosen else None, 0, True, detail))
    return out


def run_suites(names: Sequence[str], cfg: Optional[Config] = None, workers: int = 4) -> List[CheckResult]:
    """Run suites in parallel; results are assembled in the order of ``names``."""
    cfg = cfg or Config()
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(pool.map(lambda n: run_suite(n, cfg), names))
    return [r for p in parts for r in p]
