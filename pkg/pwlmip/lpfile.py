#!/usr/bin/env python
# encoding: utf-8

import io
import math

from pwlmip.model import Sense
from pwlmip.utils import chunk_iterator, format_number

# the number of terms written per line, keeps lines well below the format's limit
TERMS_PER_LINE = 8


def variable_name(variable):
    """
    :param variable: a Variable
    :return: the name to use for the variable in exports
    """
    return variable.name if variable.name else u'v{}'.format(variable.index)


def _format_terms(terms, names):
    """
    Renders (coefficient, index) terms as lines of "+ 2 x - 3 y" text.
    """
    parts = []
    for coefficient, index in terms:
        sign = u'-' if coefficient < 0 else u'+'
        magnitude = abs(coefficient)
        if magnitude == 1:
            parts.append(u'{} {}'.format(sign, names[index]))
        else:
            parts.append(u'{} {} {}'.format(sign, format_number(magnitude), names[index]))
    if parts and parts[0].startswith(u'+ '):
        parts[0] = parts[0][2:]
    return [u' '.join(chunk) for chunk in chunk_iterator(parts, TERMS_PER_LINE)]


def _format_bound(value):
    if value == math.inf:
        return u'+inf'
    if value == -math.inf:
        return u'-inf'
    return format_number(value)


def _bounds_line(variable, name):
    lower, upper = variable.lower, variable.upper
    if variable.is_binary:
        if lower == 0 and upper == 1:
            return None
    elif lower == 0 and upper == math.inf:
        return None
    if lower == -math.inf and upper == math.inf:
        return u' {} free'.format(name)
    if lower == upper:
        return u' {} = {}'.format(name, format_number(lower))
    return u' {} <= {} <= {}'.format(_format_bound(lower), name, _format_bound(upper))


def export_lp_text(model):
    """
    Renders the model in the CPLEX LP text format. The output is deterministic:
    variables appear in insertion order, constraints in id order (named c{id} unless
    they have a name) and numbers are written in their shortest round-tripping form.

    :param model: the Model
    :return: the LP text
    """
    names = [variable_name(variable) for variable in model.variables]
    lines = [u'\\ Problem: {}'.format(model.name or u'pwlmip')]

    lines.append(u'Maximize' if model.sense is Sense.MAX else u'Minimize')
    objective_terms = [(c, h.index) for c, h in model.objective.terms]
    objective_lines = _format_terms(objective_terms, names)
    constant = model.objective.constant
    if constant != 0 or not objective_lines:
        sign = u'-' if constant < 0 else u'+'
        text = u'{} {}'.format(sign, format_number(abs(constant)))
        if not objective_lines:
            text = format_number(constant)
        objective_lines.append(text)
    lines.append(u' obj: {}'.format(objective_lines[0]))
    lines.extend(u'      {}'.format(line) for line in objective_lines[1:])

    lines.append(u'Subject To')
    for constraint_id, constraint in enumerate(model.constraints):
        name = constraint.name or u'c{}'.format(constraint_id)
        terms = [(c, h.index) for c, h in constraint.terms]
        # an empty row still needs a left hand side
        empty = u'0 {}'.format(names[0] if names else u'v0')
        term_lines = _format_terms(terms, names) or [empty]
        term_lines[-1] = u'{} {} {}'.format(
            term_lines[-1], constraint.relation.value, format_number(constraint.rhs)
        )
        lines.append(u' {}: {}'.format(name, term_lines[0]))
        lines.extend(u'   {}'.format(line) for line in term_lines[1:])

    bounds = [_bounds_line(v, names[v.index]) for v in model.variables]
    bounds = [line for line in bounds if line is not None]
    if bounds:
        lines.append(u'Bounds')
        lines.extend(bounds)

    binaries = [names[index] for index in model.binary_indexes]
    if binaries:
        lines.append(u'Binaries')
        lines.extend(u' {}'.format(name) for name in binaries)

    lines.append(u'End')
    return u'\n'.join(lines) + u'\n'


def write_lp_file(model, path):
    """
    Writes the model's LP text to the given path.

    :param model: the Model
    :param path: the file path
    """
    with io.open(path, u'w', encoding=u'utf-8', newline=u'\n') as f:
        f.write(export_lp_text(model))
