from typing import Iterable

from analyse_src.verification_template import CheckOutcome, VerificationTemplate
from src.weyl_e6 import (
    LABEL_INDEX,
    WEYL_E6_ORDER,
    default_weyl_group,
    determinant_sign,
    even_subgroup_generators,
    i123_element,
    simple_reflections,
    verify_group,
)


class GroupSuite(VerificationTemplate):
    """
    W(E6) from the transpositions of the points and the quadratic transformation,
    its action on the 80 signed invariants, and the index-2 rotation subgroup.
    """

    name = "group"

    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        report = verify_group(simple_reflections())
        yield CheckOutcome("group order", WEYL_E6_ORDER, report.order)
        yield CheckOutcome("transitive on the 80 signed invariants", True, report.transitive_on_signed)
        yield CheckOutcome("blocks are the pairs {gamma, -gamma}", True, report.pair_blocks)
        yield CheckOutcome("generators preserve incidence", True, report.incidence_preserved)

        i123 = i123_element()
        far = [LABEL_INDEX[k] for k in ("c56", "c46", "c45")]
        opposite = [LABEL_INDEX[k] for k in ("m4", "m5", "m6")]
        yield CheckOutcome("order of the quadratic transformation", 2, i123.order())
        yield CheckOutcome("quadratic transformation sends c56, c46, c45 to m4, m5, m6", opposite, [i123.perm27[k] for k in far])

        even = even_subgroup_generators()
        rotations = verify_group(even)
        yield CheckOutcome("rotation subgroup order", WEYL_E6_ORDER // 2, rotations.order)
        yield CheckOutcome("rotation generators have determinant 1", [1] * len(even), [determinant_sign(g) for g in even])
        yield CheckOutcome("rotations transitive on the 40 blocks", True, rotations.transitive_on_blocks)
        yield CheckOutcome("rotations primitive on the 40 blocks", True, rotations.primitive_on_blocks)
        yield CheckOutcome("stabilizer chain order", WEYL_E6_ORDER, default_weyl_group().order())
