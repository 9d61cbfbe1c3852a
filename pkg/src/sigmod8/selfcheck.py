"""Cross-module identity suites used by the selfcheck command and tests.

Each suite re-derives one of the library's core identities two independent
ways and compares: the Gauss sum against the splitting classification, the
Arf invariant against Brown-Kervaire values, integral signatures against
van der Blij residues and mod-4 reductions, and the closed Wall form
against the kernel pairing.  All randomness comes from the caller's
SplitMix64 state, so failures reproduce from the seed alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .enhancements import (
    arf,
    bk_classify,
    bk_gauss,
    double,
    enumerate_z2_enhancements,
    enumerate_z4_enhancements,
    isotropic_subquotient,
)
from .errors import NotDivisibleBy4, OneMinusFSingular
from .fibration import (
    random_transvection_word,
    wall_form_closed,
    wall_form_general,
)
from .intforms import (
    random_unimodular_form,
    reduce_to_enhanced,
    signature_exact,
    van_der_blij_residue,
)
from .z2forms import enumerate_nonsingular_forms

__all__ = ["SuiteResult", "run_all_suites"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None

    def line(self) -> str:
        if self.passed:
            return f"suite {self.name}: PASS ({self.checked} checks)"
        return f"suite {self.name}: FAIL after {self.checked} checks: {self.counterexample}"


def suite_gauss_vs_classify(max_dim: int) -> SuiteResult:
    checked = 0
    for dim in range(0, max_dim + 1):
        for form in enumerate_nonsingular_forms(dim):
            for q in enumerate_z4_enhancements(form):
                m, n, pp, pm = bk_classify(q)
                if (4 * n + pp - pm) % 8 != bk_gauss(q):
                    return SuiteResult(
                        "gauss-vs-classify",
                        False,
                        checked,
                        f"form rows {form.rows}, values {q.values}",
                    )
                checked += 1
    return SuiteResult("gauss-vs-classify", True, checked)


def suite_bk_4arf(max_dim: int) -> SuiteResult:
    checked = 0
    for dim in range(0, max_dim + 1, 2):
        for form in enumerate_nonsingular_forms(dim, isotropic_only=True):
            for h in enumerate_z2_enhancements(form):
                if bk_gauss(double(h)) != (4 * arf(h)) % 8:
                    return SuiteResult(
                        "bk-4arf",
                        False,
                        checked,
                        f"isotropic form rows {form.rows}, h values {h.values}",
                    )
                checked += 1
    for dim in range(0, max_dim + 1):
        for form in enumerate_nonsingular_forms(dim):
            for q in enumerate_z4_enhancements(form):
                try:
                    w = isotropic_subquotient(q)
                except NotDivisibleBy4:
                    continue
                if bk_gauss(q) != (4 * arf(w)) % 8:
                    return SuiteResult(
                        "bk-4arf",
                        False,
                        checked,
                        f"form rows {form.rows}, values {q.values}",
                    )
                checked += 1
    return SuiteResult("bk-4arf", True, checked)


def suite_morita(trials: int, rng) -> SuiteResult:
    checked = 0
    for _ in range(trials):
        dim = rng.randint(1, 8)
        form = random_unimodular_form(dim, rng)
        sigma = signature_exact(form.to_rational())
        if bk_gauss(reduce_to_enhanced(form)) != sigma % 8:
            return SuiteResult("morita", False, checked, f"matrix {form.matrix}")
        checked += 1
    return SuiteResult("morita", True, checked)


def suite_van_der_blij(trials: int, rng) -> SuiteResult:
    checked = 0
    for _ in range(trials):
        dim = rng.randint(1, 8)
        form = random_unimodular_form(dim, rng)
        sigma = signature_exact(form.to_rational())
        if van_der_blij_residue(form) != sigma % 8:
            return SuiteResult("van-der-blij", False, checked, f"matrix {form.matrix}")
        checked += 1
    return SuiteResult("van-der-blij", True, checked)


def suite_wall(trials: int, rng) -> SuiteResult:
    checked = 0
    for _ in range(trials):
        # resample until the closed formula applies (det(1 - f) != 0)
        while True:
            h = rng.randint(1, 3)
            f = random_transvection_word(h, 6, rng)
            g = random_transvection_word(h, 6, rng)
            try:
                closed = wall_form_closed(f, g)
                break
            except OneMinusFSingular:
                continue
        _, general_sig = wall_form_general(f, g)
        if signature_exact(closed) != general_sig:
            return SuiteResult(
                "wall-closed-vs-general",
                False,
                checked,
                f"f {f.entries}, g {g.entries}",
            )
        checked += 1
    return SuiteResult("wall-closed-vs-general", True, checked)


def run_all_suites(max_dim: int, trials: int, rng) -> List[SuiteResult]:
    return [
        suite_gauss_vs_classify(max_dim),
        suite_bk_4arf(max_dim),
        suite_morita(trials, rng),
        suite_van_der_blij(trials, rng),
        suite_wall(trials, rng),
    ]
