"""Run the whole lemma suite and fold the reports into one manifest."""
from __future__ import annotations

import time

from .lemmas import LEMMAS, PLANE_LEMMAS, PLANE_Q, SPACE_Q, verify_lemma


def suite_plan(plane_qs=PLANE_Q, space_qs=SPACE_Q, lemmas=LEMMAS) -> list[tuple[str, int]]:
    plan = []
    for lemma in lemmas:
        qs = plane_qs if lemma in PLANE_LEMMAS else space_qs
        plan.extend((lemma, q) for q in qs)
    return plan


def run_suite(plane_qs=PLANE_Q, space_qs=SPACE_Q, lemmas=LEMMAS, seed: int = 0,
              budget_seconds: float | None = None, progress=None) -> dict:
    """Verification manifest: every (lemma, q) report plus an overall verdict.

    Reports are stored without timings so the manifest is reproducible
    byte for byte; wall-clock seconds go in a separate ``timings`` map.
    """
    reports, timings = [], {}
    t0 = time.perf_counter()
    for lemma, q in suite_plan(plane_qs, space_qs, lemmas):
        left = None if budget_seconds is None else max(1.0, budget_seconds - (time.perf_counter() - t0))
        r = verify_lemma(lemma, q, seed=seed, budget_seconds=left)
        reports.append(r.to_json(timings=False))
        timings[f"{lemma}@{q}"] = round(r.seconds, 3)
        if progress:
            progress(r)
    statuses = [r["status"] for r in reports]
    overall = "fail" if "fail" in statuses else "partial" if "partial" in statuses else "pass"
    return {"kind": "lemma-suite", "seed": seed, "status": overall,
            "plane_q": list(plane_qs), "space_q": list(space_qs), "reports": reports,
            "timings": timings}
