import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeFloat, PositiveInt, ValidationError

from cribbing_mac_regions.discrete_region.data_model import ChannelForm, DiscreteChannelSpec
from cribbing_mac_regions.errors import SpecDocumentError
from cribbing_mac_regions.info_core import JointPmf

__all__ = [
    "SCHEMA_VERSION",
    "AlphabetsModel",
    "ChannelSpecDocument",
    "parse_channel_spec",
    "dump_channel_spec",
]

SCHEMA_VERSION = 1

_TOLERANCE = 1e-12


class AlphabetsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    x1: PositiveInt
    x2: PositiveInt
    s0: PositiveInt = 1
    s1: PositiveInt
    s2: PositiveInt
    y: PositiveInt


class ChannelSpecDocument(BaseModel):
    """JSON form of a channel; arrays are flattened row-major.

    ``state_pmf`` has shape (s1, s2) for "t1" and (s0, s1, s2) for "t2"; ``transition`` has shape
    (x1, x2, s1, s2, y) for "t1" and (x1, x2, s0, s1, s2, y) for "t2".
    """
    model_config = ConfigDict(extra="forbid")

    form: Literal["t1", "t2"]
    alphabets: AlphabetsModel
    state_pmf: list[NonNegativeFloat]
    transition: list[NonNegativeFloat]

    def to_spec(self) -> DiscreteChannelSpec:
        """Checks the array contents and builds the channel.

        Raises:
            SpecDocumentError : With a JSON pointer to the first offending member.
        """
        a = self.alphabets
        form = ChannelForm(self.form)
        if form is ChannelForm.T1 and a.s0 != 1:
            raise SpecDocumentError("/alphabets/s0", "must be 1 for a 't1' channel")
        state_dims = (a.s1, a.s2) if form is ChannelForm.T1 else (a.s0, a.s1, a.s2)
        transition_shape = (a.x1, a.x2) + state_dims + (a.y,)
        _check_length("/state_pmf", self.state_pmf, math.prod(state_dims))
        _check_length("/transition", self.transition, math.prod(transition_shape))
        state = np.asarray(self.state_pmf, dtype=np.float64)
        if abs(float(state.sum()) - 1.0) > _TOLERANCE:
            raise SpecDocumentError("/state_pmf", f"probabilities sum to {float(state.sum())!r}, not 1")
        rows = np.asarray(self.transition, dtype=np.float64).reshape(-1, a.y)
        bad = np.flatnonzero(np.abs(rows.sum(axis=1) - 1.0) > _TOLERANCE)
        if bad.size:
            row = int(bad[0])
            raise SpecDocumentError(
                f"/transition/{row * a.y}",
                f"the row starting here (row {row}) sums to {float(rows[row].sum())!r}, not 1",
            )
        try:
            return DiscreteChannelSpec(
                form=form,
                x1=a.x1,
                x2=a.x2,
                s0=a.s0,
                s1=a.s1,
                s2=a.s2,
                y=a.y,
                state_pmf=JointPmf(state_dims, state),
                transition=rows,
            )
        except ValueError as exc:
            raise SpecDocumentError("/state_pmf", str(exc)) from exc

    @classmethod
    def from_spec(cls, spec: DiscreteChannelSpec) -> "ChannelSpecDocument":
        return cls(
            form=spec.form.value,
            alphabets=AlphabetsModel(x1=spec.x1, x2=spec.x2, s0=spec.s0, s1=spec.s1, s2=spec.s2, y=spec.y),
            state_pmf=spec.state_pmf.probs.ravel().tolist(),
            transition=spec.transition.ravel().tolist(),
        )


def _check_length(pointer: str, values: list[float], expected: int):
    if len(values) != expected:
        raise SpecDocumentError(pointer, f"has {len(values)} entries, expected {expected}")


def _pointer(loc: tuple) -> str:
    return "".join("/" + str(part).replace("~", "~0").replace("/", "~1") for part in loc)


def parse_channel_spec(text: str) -> DiscreteChannelSpec:
    """Reads a channel from its JSON document.

    Raises:
        SpecDocumentError : The text is not JSON, does not match the document shape, or holds invalid pmfs.
    """
    try:
        document = ChannelSpecDocument.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise SpecDocumentError(_pointer(tuple(first.get("loc", ()))), first.get("msg", "invalid document")) from None
    return document.to_spec()


def dump_channel_spec(spec: DiscreteChannelSpec) -> str:
    return ChannelSpecDocument.from_spec(spec).model_dump_json(indent=2)
