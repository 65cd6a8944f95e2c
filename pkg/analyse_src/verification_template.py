import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable

import pandas as pd

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

REPORT_COLUMNS = ["suite", "check", "expected", "observed", "passed"]


@dataclass(frozen=True)
class CheckOutcome:
    check: str
    expected: Any
    observed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


class VerificationTemplate(ABC):
    """
    Abstract template for a verification suite.

    ``execute_verification`` runs the concrete checks for a seed and collects
    their outcomes into a report with one row per check.
    """

    name: str = ""

    def execute_verification(self, seed: int, samples: int) -> pd.DataFrame:
        """
        Executes the suite.

        Parameters:
        ----------
        seed : int
            Master seed of all sampling done by the checks.
        samples : int
            Number of configurations behind the seeded relation data.

        Returns:
        -------
        pd.DataFrame
            Columns suite, check, expected, observed, passed.
        """
        logging.info(f"Running verification suite {self.name} with seed {seed}.")
        report = self.summarize(self.run_checks(seed, samples))
        failed = int((~report["passed"]).sum())
        if failed:
            logging.warning(f"Suite {self.name}: {failed} of {len(report)} checks failed.")
        return report

    @abstractmethod
    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        """
        Performs the checks of the suite.

        Parameters:
        ----------
        seed : int
            Master seed.
        samples : int
            Relation sample count.

        Returns:
        -------
        Iterable[CheckOutcome]
            One outcome per check, in a fixed order.
        """
        pass

    def summarize(self, outcomes: Iterable[CheckOutcome]) -> pd.DataFrame:
        rows = [
            {"suite": self.name, "check": o.check, "expected": str(o.expected), "observed": str(o.observed), "passed": o.passed}
            for o in outcomes
        ]
        return pd.DataFrame(rows, columns=REPORT_COLUMNS).astype({"passed": bool})
