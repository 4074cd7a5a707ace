"""The fixed five-step misuse chain shared by every module.

Steps form a total order (ideation first, deploy/delivery last) and the
chain never gains or loses steps at runtime: scenarios, simulations,
qualitative profiles, and file formats all address exactly these five.
"""

from __future__ import annotations

import functools
from enum import Enum

from .errors import ValidationError


@functools.total_ordering
class ChainStep(Enum):
    """One step of the misuse chain, ordered by position in the chain."""

    IDEATION = "ideation"
    ACQUISITION = "acquisition"
    PRODUCTION = "production"
    WEAPONIZATION = "weaponization"
    DEPLOY_DELIVERY = "deploy"

    @property
    def token(self) -> str:
        """Lowercase token used in CSV files, JSON documents, and URLs."""
        return self.value

    @classmethod
    def from_token(cls, token: str) -> ChainStep:
        try:
            return cls(token)
        except ValueError:
            known = ", ".join(s.value for s in cls)
            raise ValidationError(f"unknown step {token!r} (expected one of: {known})") from None

    @property
    def index(self) -> int:
        """Zero-based position in the chain."""
        return _STEP_INDEX[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ChainStep):
            return NotImplemented
        return _STEP_INDEX[self] < _STEP_INDEX[other]

    def __hash__(self) -> int:
        return super().__hash__()


# Definition order above is the chain order.
CHAIN_ORDER: tuple[ChainStep, ...] = tuple(ChainStep)

_STEP_INDEX = {step: i for i, step in enumerate(CHAIN_ORDER)}
