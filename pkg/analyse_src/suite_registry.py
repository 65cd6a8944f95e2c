from typing import Sequence

import pandas as pd

from analyse_src.group_suites import GroupSuite
from analyse_src.pipeline_suites import DescentSuite, PartnerSuite, RoundtripSuite
from analyse_src.relation_suites import BeautifulSuite, CubicSuite, InvariantsSuite, Rank10Suite, SpansSuite
from analyse_src.verification_template import REPORT_COLUMNS, VerificationTemplate
from src.errors import InputError

SUITES = {
    suite.name: suite
    for suite in (
        Rank10Suite,
        SpansSuite,
        GroupSuite,
        CubicSuite,
        BeautifulSuite,
        InvariantsSuite,
        PartnerSuite,
        RoundtripSuite,
        DescentSuite,
    )
}
SUITE_CHOICES = tuple(SUITES) + ("all",)


def get_suite(name: str) -> VerificationTemplate:
    if name not in SUITES:
        raise InputError(f"Unknown verification suite {name!r}; choose from {', '.join(SUITE_CHOICES)}.")
    return SUITES[name]()


def run_suites(names: Sequence[str], seed: int, samples: int) -> pd.DataFrame:
    """Runs the named suites in order ("all" expands to every suite) and concatenates their reports."""
    expanded = []
    for name in names:
        expanded.extend(SUITES if name == "all" else [name])
    reports = [get_suite(name).execute_verification(seed, samples) for name in expanded]
    if not reports:
        return pd.DataFrame(columns=REPORT_COLUMNS)
    return pd.concat(reports, ignore_index=True)
