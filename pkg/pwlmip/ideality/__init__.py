#!/usr/bin/env python
# encoding: utf-8

from pwlmip.ideality.checks import (
    IdealityReport,
    check_flagged_points,
    check_local_ideality,
    indicator_model,
)
from pwlmip.ideality.polytope import (
    HPolytope,
    enumerate_vertices,
    from_relaxation,
    is_extreme,
    point_membership,
)
