#!/usr/bin/env python
# encoding: utf-8

from pwlmip.formulations.base import (
    Formulation,
    Fragment,
    IndicatorVariant,
    MethodTag,
    VariableCounts,
)
from pwlmip.formulations.convex import (
    CONVEX_COMBINATION,
    CONVEX_COMBINATION_DISCONTINUOUS,
    convex_combination_continuous,
    convex_combination_discontinuous,
)
from pwlmip.formulations.incremental import (
    INCREMENTAL_CONTINUOUS,
    INCREMENTAL_LEFT,
    INCREMENTAL_RIGHT,
    incremental_continuous,
    incremental_for,
    incremental_left_continuous,
    incremental_right_continuous,
)
from pwlmip.formulations.indicators import with_binary_indicator
from pwlmip.formulations.separable import count_vars, get_formulation, separable_sum

# a dict of all the builders, keyed by their method names
formulations = {
    formulation.name: formulation
    for formulation in [
        INCREMENTAL_CONTINUOUS,
        INCREMENTAL_RIGHT,
        INCREMENTAL_LEFT,
        CONVEX_COMBINATION,
        CONVEX_COMBINATION_DISCONTINUOUS,
    ]
}
