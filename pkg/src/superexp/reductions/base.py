"""Reduction records and witness-mapping dispatch."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ExtractionFailed, InvalidSourceWitness, InvalidTargetWitness
from ..oracles import verify_witness


class _NotApplicable:
    """Returned by push-forward when the proof's forward step does not apply
    to this particular record (for example a recoloring that stars the
    witness)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotApplicable"

    def __bool__(self):
        return False


NotApplicable = _NotApplicable()


@dataclass(frozen=True)
class ReductionRecord:
    rule: str
    source: object
    target: object
    aux: dict = field(default_factory=dict, compare=False)


_PULL = {}
_PUSH = {}


def register(rule, pull=None, push=None):
    if pull is not None:
        _PULL[rule] = pull
    if push is not None:
        _PUSH[rule] = push


def has_push(rule) -> bool:
    return rule in _PUSH


def pull_back_witness(rec: ReductionRecord, w_target):
    """Source witness extracted from a verified target witness."""
    if not verify_witness(rec.target, w_target):
        raise InvalidTargetWitness(f"{rec.rule}: target witness does not verify")
    w = _PULL[rec.rule](rec, w_target)
    if w is None or not verify_witness(rec.source, w):
        raise ExtractionFailed(f"{rec.rule}: extracted source witness does not verify")
    return w


def push_forward_witness(rec: ReductionRecord, w_source):
    """Target witness built from a verified source witness, or NotApplicable."""
    if not verify_witness(rec.source, w_source):
        raise InvalidSourceWitness(f"{rec.rule}: source witness does not verify")
    return _PUSH[rec.rule](rec, w_source)
