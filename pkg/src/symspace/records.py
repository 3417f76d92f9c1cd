"""Dict conversion shared by the report dataclasses."""
import math
from dataclasses import MISSING, asdict, fields


class Record:
    """Mixin for dataclasses that are serialized as flat JSON objects.

    JSON has no infinities or NaN, so those are written as ``null``;
    :meth:`from_dict` maps ``null`` back to the field default, or NaN when the
    field has none. Keys that are not fields (derived values, ``meta``) are
    ignored.
    """

    @classmethod
    def from_dict(cls, data):
        kwargs = {}
        for f in fields(cls):
            if f.name not in data:
                continue
            v = data[f.name]
            if v is None:
                v = f.default if f.default is not MISSING else math.nan
            kwargs[f.name] = v
        return cls(**kwargs)

    def to_dict(self):
        return asdict(self)
