#!/usr/bin/env python
# encoding: utf-8

from pwlmip.model import LinearConstraint, LinearExpression, Model


class Component(object):
    """
    A block of a model: variables linked to each other through constraints and to no
    variable outside the block.
    """

    def __init__(self, variables, constraints):
        """
        :param variables: the sorted indexes of the component's variables
        :param constraints: the sorted ids of the component's constraints
        """
        self.variables = variables
        self.constraints = constraints

    def signature(self, model, costs):
        """
        Returns a hashable description of the component's data in local coordinates.
        Two components with equal signatures have the same optimal solutions, up to
        renaming their variables.

        :param model: the Model the component belongs to
        :param costs: a dict of the objective coefficients keyed by variable index
        :return: a tuple
        """
        local = {index: position for position, index in enumerate(self.variables)}
        variables = tuple(
            (
                model.variables[index].lower,
                model.variables[index].upper,
                model.variables[index].kind,
                costs.get(index, 0),
            )
            for index in self.variables
        )
        constraints = tuple(
            (
                tuple((coefficient, local[handle.index])
                      for coefficient, handle in model.constraints[cid].terms),
                model.constraints[cid].relation,
                model.constraints[cid].rhs,
            )
            for cid in self.constraints
        )
        return variables, constraints

    def submodel(self, model):
        """
        Extracts the component as a model of its own, without the objective constant.

        :param model: the Model the component belongs to
        :return: a new Model whose variable i is the component's i-th variable
        """
        sub = Model(model.name)
        handles = {}
        for index in self.variables:
            variable = model.variables[index]
            handles[index] = sub.add_variable(
                variable.name, variable.lower, variable.upper, variable.kind
            )
        for cid in self.constraints:
            constraint = model.constraints[cid]
            sub.add_constraint(LinearConstraint(
                [(coefficient, handles[handle.index])
                 for coefficient, handle in constraint.terms],
                constraint.relation,
                constraint.rhs,
            ))
        sub.set_objective(LinearExpression(
            [(coefficient, handles[handle.index])
             for coefficient, handle in model.objective.terms
             if handle.index in handles]
        ), model.sense)
        return sub

    def __repr__(self):
        return u'Component({} variables, {} constraints)'.format(
            len(self.variables), len(self.constraints)
        )


def decompose(model):
    """
    Splits the model into its connected components using a union-find over the
    variables sharing a constraint. Variables that appear in no constraint form
    components of their own.

    :param model: the Model
    :return: a list of Components ordered by their smallest variable index
    """
    parents = list(range(len(model.variables)))

    def find(index):
        root = index
        while parents[root] != root:
            root = parents[root]
        # path compression
        while parents[index] != root:
            parents[index], index = root, parents[index]
        return root

    for constraint in model.constraints:
        indexes = [handle.index for _coefficient, handle in constraint.terms]
        for other in indexes[1:]:
            first_root, other_root = find(indexes[0]), find(other)
            if first_root != other_root:
                parents[max(first_root, other_root)] = min(first_root, other_root)

    variables = {}
    for index in range(len(model.variables)):
        variables.setdefault(find(index), []).append(index)
    constraints = {root: [] for root in variables}
    empty = []
    for cid, constraint in enumerate(model.constraints):
        if constraint.terms:
            constraints[find(constraint.terms[0][1].index)].append(cid)
        else:
            empty.append(cid)

    components = [Component(variables[root], constraints[root])
                  for root in sorted(variables)]
    if empty and components:
        # rows without terms only need checking once
        components[0].constraints = sorted(components[0].constraints + empty)
    elif empty:
        components.append(Component([], empty))
    return components


def whole(model):
    """
    Returns the model as a single component, the way the search sees it when the model
    is not decomposed.

    :param model: the Model
    :return: a list holding one Component, or no Component for an empty model
    """
    if not model.variables and not model.constraints:
        return []
    return [Component(list(range(len(model.variables))),
                      list(range(len(model.constraints))))]
