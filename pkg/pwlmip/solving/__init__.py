#!/usr/bin/env python
# encoding: utf-8

from pwlmip.solving.branching import BranchAndBound, MilpSolution, MilpStatus, solve_milp
from pwlmip.solving.components import Component, decompose
from pwlmip.solving.simplex import (
    BasisStatus,
    LpProblem,
    LpSolution,
    LpStatus,
    solve_lp,
)
