"""Acceptance gate: twelve exact criteria, one PASS/FAIL line each."""

import time
from fractions import Fraction

import pytest

from qeuclid.checks import Config, imaginary_ratios, jackson_line_residuals, run_suite

CFG = Config(q0=Fraction(11, 10), J=10, M=4, deg=6, assoc_samples=200, conj_samples=200, braid_deg=5, uhat_deg=4,
             caps=(3, 4, 5), addition_cap=3, stokes_samples=50, byparts_samples=20, expect_states=10,
             windows=(8, 10, 12))


@pytest.fixture
def verdict(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(number: int, title: str, ok: bool, detail: str):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
        else:
            print(line)
        assert ok, line

    return emit


def checks(suite, *ids):
    t0 = time.perf_counter()
    results = run_suite(suite, CFG, only=list(ids))
    return results, time.perf_counter() - t0


def summary(results):
    return "; ".join(f"{r.check_id} {r.status} ({r.detail})" for r in results)


def test_01_oracle_equivalence(verdict):
    (r,), dt = checks("star", "oracle-equivalence")
    verdict(1, "star product equals the normal-ordered product", r.status == "pass" and dt < 30,
            f"{r.detail}, deg f + deg g <= {CFG.deg}, {dt:.1f} s")


def test_02_associativity(verdict):
    (r,), _ = checks("star", "associativity")
    verdict(2, "star associativity", r.status == "pass", r.detail)


def test_03_conjugation_laws(verdict):
    (r,), _ = checks("star", "conjugation")
    verdict(3, "conjugation reverses star products; series and word conjugation agree", r.status == "pass",
            r.detail)


def test_04_uqsu2_relations(verdict):
    (r,), _ = checks("algebra", "uqsu2-relations")
    verdict(4, "U_q(su2) relations on spin representations", r.status == "pass", r.detail)


def test_05_exponential_eigenvalues(verdict):
    (r,), dt = checks("exponential", "eigenvalue-equations")
    verdict(5, "q-exponential eigenvalue equations below the cap", r.status == "pass" and dt < 60,
            f"{r.detail}, both sides, all axes, {dt:.1f} s")


def test_06_addition_and_inversion(verdict):
    results, _ = checks("exponential", "addition-theorem", "inversion-identity")
    verdict(6, "addition theorem and inverse exponential with hatted maps",
            all(r.status == "pass" for r in results), summary(results))


def test_07_coassociativity_and_counit(verdict):
    results, _ = checks("translate", "coassociativity", "counit")
    verdict(7, "braided coassociativity and counit, degree <= 5", all(r.status == "pass" for r in results),
            summary(results))


def test_08_uhat_and_inversion(verdict):
    results, _ = checks("translate", "uhat-inverse", "inversion-degree-one")
    verdict(8, "U U^-1 = id to degree 4; inversion is -x at degree 1", all(r.status == "pass" for r in results),
            summary(results))


def test_09_lattice_stokes(verdict):
    (r,), dt = checks("lattice", "stokes")
    verdict(9, "whole-space integral of derivatives vanishes (d_left, d_right_bar)",
            r.status == "pass" and dt < 10, f"{r.detail}, {dt:.1f} s")


def test_10_integration_by_parts(verdict):
    results, _ = checks("lattice", "by-parts-right-bar", "by-parts-right", "by-parts-right-paired")
    members = [r for r in results if r.check_id != "lattice.by-parts"]
    passing = [r.check_id for r in members if r.status == "pass"]
    verdict(10, "integration by parts for some right action", bool(passing),
            f"passing: {', '.join(passing) or 'none'}; " + summary(members))


def test_11_expectation_layer(verdict):
    results, _ = checks("expect", "x3-even-states", "imaginary-part-trend")
    ratios = imaginary_ratios(CFG)
    largest = max(v for rows in ratios for row in rows for v in row)
    verdict(11, "<X3> = 0 for even states; |Im <X^i>|/|<1>| non-increasing over J = 8, 10, 12",
            all(r.status == "pass" for r in results), summary(results) + f"; largest squared ratio {largest} (exactly zero on the conjugation-compatible lattice)")


def test_12_jackson_line_integral(verdict):
    sym, num = jackson_line_residuals(CFG.q0)
    verdict(12, "int_0^x0 z d_q z = x0^2/(q+1)", not sym and not num,
            f"symbolic residual {sym}, residual at q0 = {CFG.q0}: {num}")
