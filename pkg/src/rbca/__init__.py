"""Random Boolean cellular automata on rings and on the integer line."""

__version__ = "0.1.0"

from .blocks import (BlockKind, BlockSpec, BlockVerdict, ClassificationVerdict, SigmaStatus,
                     analyze_block, analyze_family, dichotomy_check, minimal_impermeable_supports,
                     search_absorbing, search_impermeable, theorem1_classify)
from .engine import (CycleNotFound, CycleSummary, RingConfiguration, RuleVector, run_until_cycle,
                     sample_cone, step)
from .rules import affine_form, apply, canonicalize, mirror, orbit, reverse
from .stability import RuleDistribution, SigmaEstimate, estimate_sigma, exact_sigma

__all__ = [
    "BlockKind", "BlockSpec", "BlockVerdict", "ClassificationVerdict", "SigmaStatus",
    "analyze_block", "analyze_family", "dichotomy_check", "minimal_impermeable_supports",
    "search_absorbing", "search_impermeable", "theorem1_classify",
    "CycleNotFound", "CycleSummary", "RingConfiguration", "RuleVector", "run_until_cycle",
    "sample_cone", "step",
    "affine_form", "apply", "canonicalize", "mirror", "orbit", "reverse",
    "RuleDistribution", "SigmaEstimate", "estimate_sigma", "exact_sigma",
]
