import json
import sys
from fractions import Fraction

from k3brauer import exactnum


def to_jsonable(value):
    """
    Convert a result value into plain JSON types.

    :param value: anything produced by the library.

    Fractions and :class:`~k3brauer.exactnum.QMod2Z` become canonical
    ``"p/q"`` strings, integer matrices become nested lists, and any
    object with a ``to_json`` method is asked to describe itself.

    """
    if value is None or isinstance(value, (bool, str, float)):
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, Fraction):
        return exactnum.format_rational(value)
    if isinstance(value, exactnum.QMod2Z):
        return str(value)
    if isinstance(value, exactnum.IntMatrix):
        return value.to_lists()
    if hasattr(value, 'to_json'):
        return to_jsonable(value.to_json())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return exactnum.format_rational(value)
    raise TypeError('cannot serialise {!r}'.format(value))


def dumps(document):
    """Canonical JSON text: sorted keys and a two space indent."""
    return json.dumps(to_jsonable(document), sort_keys=True, indent=2)


def report(document, stream=None):
    """
    Write a result document.

    :param dict document: the result to write.
    :param stream: file-like object, :data:`sys.stdout` by default.

    """
    stream = sys.stdout if stream is None else stream
    stream.write(dumps(document))
    stream.write('\n')
