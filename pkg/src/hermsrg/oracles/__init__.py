"""Brute-force lemma oracles and invariant-based graph distinguishers."""
from .distinguish import Certificate, DistinguishResult, check_certificate, distinguish
from .lemmas import (LEMMAS, PLANE_LEMMAS, SPACE_LEMMAS, char_values, closed_form,
                     switched_special_value, triangles_by_type, verify_lemma)
from .report import LemmaCase, LemmaReport
from .suite import run_suite, suite_plan

__all__ = ["LEMMAS", "PLANE_LEMMAS", "SPACE_LEMMAS", "Certificate", "DistinguishResult", "LemmaCase",
           "LemmaReport", "char_values", "check_certificate", "closed_form", "distinguish", "run_suite",
           "suite_plan", "switched_special_value", "triangles_by_type", "verify_lemma"]
