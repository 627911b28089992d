"""Reading and writing channel specification files.

A channel file is JSON::

    {"schema": 1,
     "subchannels": [{"h11": 1, "h12": 2, "h21": 2, "h22": 1, "p1": 1, "p2": 1}]}

``schema`` is optional on input.  Validation errors name the offending
field as a path such as ``subchannels[1].h22``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Union

from .channel import ChannelInstance, Subchannel

__all__ = ['SpecError', 'FIELDS', 'parse_channel', 'load_channel', 'dump_channel',
           'channel_to_dict', 'fmt_number', 'round_floats']

FIELDS = ('h11', 'h12', 'h21', 'h22', 'p1', 'p2')
SCHEMA_VERSION = 1


class SpecError(ValueError):
    """Invalid channel file; ``path`` locates the problem."""

    def __init__(self, path: str, message: str):
        super().__init__(f'{path}: {message}' if path else message)
        self.path = path


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(path, f'expected a number, got {json.dumps(value)}')
    value = float(value)
    if not math.isfinite(value):
        raise SpecError(path, 'must be finite')
    return value


def channel_from_dict(doc) -> ChannelInstance:
    if not isinstance(doc, dict):
        raise SpecError('$', 'top level must be an object')
    schema = doc.get('schema', SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise SpecError('schema', f'unsupported schema {schema!r}, expected {SCHEMA_VERSION}')
    if 'subchannels' not in doc:
        raise SpecError('subchannels', 'missing')
    subs = doc['subchannels']
    if not isinstance(subs, list):
        raise SpecError('subchannels', 'must be a list')
    if not subs:
        raise SpecError('subchannels', 'needs at least one sub-channel')
    out = []
    for m, entry in enumerate(subs):
        base = f'subchannels[{m}]'
        if not isinstance(entry, dict):
            raise SpecError(base, 'must be an object')
        unknown = sorted(set(entry) - set(FIELDS))
        if unknown:
            raise SpecError(f'{base}.{unknown[0]}', 'unknown field')
        values = {}
        for name in FIELDS:
            path = f'{base}.{name}'
            if name not in entry:
                raise SpecError(path, 'missing')
            values[name] = _number(entry[name], path)
            if name.startswith('h') and values[name] == 0.0:
                raise SpecError(path, 'channel coefficient must be non-zero')
            if name.startswith('p') and values[name] < 0.0:
                raise SpecError(path, 'power must be >= 0')
        out.append(Subchannel(**values))
    return ChannelInstance(tuple(out))


def parse_channel(text: str) -> ChannelInstance:
    """Parse a channel file from its JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f'line {exc.lineno}, column {exc.colno}', exc.msg) from None
    return channel_from_dict(doc)


def load_channel(path: Union[str, Path]) -> ChannelInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(str(path), exc.strerror or str(exc)) from None
    return parse_channel(text)


def channel_to_dict(ch: ChannelInstance) -> dict:
    return {'schema': SCHEMA_VERSION, 'subchannels': [s.as_dict() for s in ch]}


def dump_channel(ch: ChannelInstance) -> str:
    """Serialize losslessly (floats keep their shortest round-trip repr)."""
    return json.dumps(channel_to_dict(ch), indent=2) + '\n'


def fmt_number(x: float) -> str:
    """Nine significant digits."""
    return format(float(x), '.9g')


def round_floats(obj):
    """Round every float in a JSON-like structure to nine significant digits."""
    if isinstance(obj, float):
        return float(fmt_number(obj))
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj
