"""The main report models used by many different commands"""
from pydantic import BaseModel, validator
import typing


class Violation(BaseModel):
    """A single broken invariant found while validating an input.

    Attributes:
    - `code (str)`: A short machine readable identifier, e.g. `not-connected`
    - `message (str)`: A human readable description of the problem
    - `ref (str, None)`: The offending id (node, edge, neighbourhood, object
      or morphism), if there is one
    """
    code: str
    message: str
    ref: str = None


class ValidationReport(BaseModel):
    """The result of validating an input. Validation never aborts, so every
    violation that was found is listed.

    Attributes:
    - `ok (bool)`: True if there are no violations
    - `violations (list[Violation])`: The violations in the order they were
      detected
    """
    ok: bool
    violations: typing.List[Violation] = []

    @classmethod
    def from_violations(cls, violations: typing.List[Violation]) -> 'ValidationReport':
        return cls(ok=not violations, violations=violations)


class Counterexample(BaseModel):
    """A witness that an axiom or law does not hold.

    Attributes:
    - `axiom (str)`: The name of the axiom which failed
    - `object (str)`: The object id at which the failure was found
    - `description (str)`: A human readable explanation
    - `arrows (list[str])`: The morphism ids involved, in a fixed order
    """
    axiom: str
    object: str
    description: str
    arrows: typing.List[str] = []


class AxiomCheck(BaseModel):
    """The outcome of checking one axiom over a workspace.

    Attributes:
    - `axiom (str)`: The axiom name, e.g. `stability`
    - `checked (int)`: How many instances were checked
    - `instances (list[str])`: A description of every checked instance, when
      the verifier records them
    - `counterexamples (list[Counterexample])`: Every failing instance
    """
    axiom: str
    checked: int = 0
    instances: typing.List[str] = []
    counterexamples: typing.List[Counterexample] = []

    @property
    def passed(self) -> bool:
        return not self.counterexamples


class CheckReport(BaseModel):
    """A full verifier report.

    Attributes:
    - `ok (bool)`: True if every axiom passed
    - `checks (list[AxiomCheck])`: One entry per axiom in the verified order
    - `notes (list[str])`: Anything the reader should know about how the
      check was carried out, e.g. that an enumeration was sampled
    """
    ok: bool
    checks: typing.List[AxiomCheck]
    notes: typing.List[str] = []

    @classmethod
    def from_checks(
            cls, checks: typing.List[AxiomCheck],
            notes: typing.List[str] = None) -> 'CheckReport':
        return cls(
            ok=all(check.passed for check in checks),
            checks=checks,
            notes=notes or []
        )


class RunConfig(BaseModel):
    """The effective flags of a single command line run. Identical inputs
    and an identical RunConfig produce byte-identical standard output.

    Attributes:
    - `json_output (bool)`: Emit machine readable JSON instead of text
    - `limit (int, None)`: Truncate cover lists at this many covers
    - `seed (int)`: Seed for sampled sieves
    - `samples (int)`: Sampled sieves per object for transitivity
    - `literal_paper (bool)`: Use the literal two-sieve topology
    - `lax_cover_compat (bool)`: Drop the commuting-triangle requirement on
      correct-to-correct morphisms
    - `max_arrows (int)`: Refuse to enumerate all sieves on an object with
      more incoming arrows than this
    - `max_product (int)`: Refuse to materialize products of sense sets
      larger than this
    - `verbose (bool)`: Log at DEBUG
    """
    json_output: bool = False
    limit: int = None
    seed: int = 0
    samples: int = 200
    literal_paper: bool = False
    lax_cover_compat: bool = False
    max_arrows: int = 16
    max_product: int = 100000
    verbose: bool = False

    @validator('limit')
    def limit_nonnegative(cls, v):
        if v is not None and v < 0:
            raise ValueError('must be nonnegative')
        return v

    @validator('samples', 'max_arrows', 'max_product')
    def count_nonnegative(cls, v):
        if v < 0:
            raise ValueError('must be nonnegative')
        return v
