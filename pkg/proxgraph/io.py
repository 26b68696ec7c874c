"""
JSON codecs for space, graph, map and result files.

Rationals are always written as strings ("n" or "p/q").
"""

import json

from .bigraph import validate_graph
from .errors import ParseError
from .metric_space import FiniteSpace, validate_space
from .realize import CountableFamily
from .utils import format_rational


def load_json(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}") from None


def _require_object(raw, path, kind):
    if not isinstance(raw, dict):
        raise ParseError(f"{path} is not a {kind} file: top level must be an object")
    return raw


def load_space(path):
    return validate_space(_require_object(load_json(path), path, 'space'))


def load_graph(path):
    return validate_graph(_require_object(load_json(path), path, 'graph'))


def load_map(path):
    raw = _require_object(load_json(path), path, 'map')
    table = raw.get('map')
    if not isinstance(table, dict):
        raise ParseError(f"{path} needs a 'map' object")
    return {str(k): str(v) for k, v in table.items()}


def space_to_dict(space):
    raw = {
        'points': list(space.points),
        'distances': [[format_rational(v) for v in row] for row in space.dist],
    }
    if space.parts:
        raw['parts'] = {name: list(members) for name, members in space.parts.items()}
    return raw


def graph_to_dict(g):
    raw = {
        'A': list(g.part_a),
        'B': list(g.part_b),
        'edges': [list(edge) for edge in g.sorted_edges()],
    }
    if not g.is_finite:
        raw['infinite'] = {'A': g.a_infinite, 'B': g.b_infinite}
    return raw


def witness_to_dict(witness):
    if witness is None:
        return None
    if isinstance(witness, CountableFamily):
        return witness.to_dict()
    if isinstance(witness, FiniteSpace):
        return space_to_dict(witness)
    raise TypeError(f"Unsupported witness type {type(witness).__name__}")


def decision_to_dict(decision):
    return {
        'target': decision.target.value,
        'level': decision.level.value,
        'realizable': decision.realizable,
        'reason': decision.reason.value,
        'witness': witness_to_dict(decision.witness),
    }


def space_class_to_dict(verdict):
    return {
        'level': verdict.level.label,
        'violation': list(verdict.violation) if verdict.violation else None,
    }


def partition_to_dict(partition):
    return {
        'radius': format_rational(partition.radius),
        'representatives': list(partition.representatives),
        'blocks': [{'center': b.center, 'radius': format_rational(b.radius),
                    'members': list(b.members)} for b in partition.blocks],
    }


def dumps(obj):
    """Deterministic JSON text for standard output and fixture files."""
    return json.dumps(obj, indent=2, ensure_ascii=False)


def write_json(obj, path):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(obj) + '\n')
