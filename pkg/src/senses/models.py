"""Contains the presheaf of senses models and the reports of the sheaf and
classifier checks"""
from dataclasses import dataclass
from pydantic import BaseModel
from models import AxiomCheck
from sites.models import Morphism, Sieve
import typing

TERMINAL_SENSE = '*'
"""The one sense of the terminal presheaf"""


class Presheaf(BaseModel):
    """A finite presheaf of senses tabulated over a workspace.

    Attributes:
    - `name (str)`: Defaults to the file stem
    - `senses (dict[str, list[str]])`: Object id to its sense labels
    - `restrictions (dict[str, dict[str, str]])`: Morphism id to the map
      from senses of its target to senses of its source
    """
    name: str = ''
    senses: typing.Dict[str, typing.List[str]] = {}
    restrictions: typing.Dict[str, typing.Dict[str, str]] = {}

    def at(self, object_id: str) -> typing.List[str]:
        return self.senses.get(object_id, [])

    def restrict(self, f: Morphism, x: str) -> typing.Optional[str]:
        """The sense F(f)(x), or None if the table has no entry"""
        return self.restrictions.get(f.id, {}).get(x)


class SubPresheaf(BaseModel):
    """A choice of senses per object, meant to be closed under restriction.

    Attributes:
    - `name (str)`: Defaults to the file stem
    - `members (dict[str, list[str]])`: Object id to the chosen senses;
      objects left out have none
    """
    name: str = ''
    members: typing.Dict[str, typing.List[str]] = {}

    def at(self, object_id: str) -> typing.List[str]:
        return self.members.get(object_id, [])

    def contains(self, object_id: str, x: str) -> bool:
        return x in self.members.get(object_id, ())


@dataclass(frozen=True)
class MatchingFamily:
    """A compatible choice of a sense along every arrow of a sieve.

    Attributes:
    - `sieve (Sieve)`: The sieve
    - `assignment (tuple[tuple[Morphism, str]])`: One sense of the source
      of each arrow, arrows in workspace order
    """
    sieve: Sieve
    assignment: typing.Tuple[typing.Tuple[Morphism, str], ...] = ()

    def as_dict(self) -> typing.Dict[Morphism, str]:
        return dict(self.assignment)

    def describe(self) -> str:
        return '{' + ', '.join(f'{f.id}: {x}' for f, x in self.assignment) + '}'


@dataclass(frozen=True)
class ClassifierValue:
    """The sieve classifying one sense with respect to a subpresheaf.

    Attributes:
    - `sense (str)`: The classified sense
    - `sieve (Sieve)`: Arrows along which the sense restricts into the
      subpresheaf
    - `maximal (bool)`: Whether the sieve is maximal, i.e. the sense is a
      member
    - `closed (bool)`: Whether the sieve is closed
    - `principal (bool)`: Whether one of its arrows generates it
    """
    sense: str
    sieve: Sieve
    maximal: bool
    closed: bool
    principal: bool


class SheafObjectResult(BaseModel):
    """The local sheaf condition at one correct object.

    Attributes:
    - `object (str)`: The object id
    - `senses (int)`: How many senses the object has
    - `families (int)`: How many matching families its cover sieve has
    - `injective (bool)`: No two senses restrict to the same family
    - `surjective (bool)`: Every matching family comes from a sense
    - `witness (str, None)`: Why the condition fails, if it does
    """
    object: str
    senses: int
    families: int
    injective: bool
    surjective: bool
    witness: str = None

    @property
    def ok(self) -> bool:
        return self.injective and self.surjective


class SheafReport(BaseModel):
    """The result of checking the sheaf condition on every cover sieve.

    Attributes:
    - `ok (bool)`: True if the presheaf is a sheaf
    - `presheaf (str)`: The presheaf name
    - `objects (list[SheafObjectResult])`: One entry per correct object, in
      workspace order
    """
    ok: bool
    presheaf: str
    objects: typing.List[SheafObjectResult] = []


class EqualizerReport(BaseModel):
    """The result of checking the equalizer form of the sheaf condition on
    one sieve.

    Attributes:
    - `ok (bool)`: True if e is injective with image the equalizer of p and a
    - `object (str)`: The object the sieve is on
    - `arrows (list[str])`: The morphism ids of the sieve
    - `product_size (int)`: The size of the product of sense sets over the
      sieve
    - `equalized (int)`: How many elements of the product p and a agree on
    - `injective (bool)`: Whether e is injective
    - `image_matches (bool)`: Whether the image of e is the equalizer
    - `witness (str, None)`: Why the condition fails, if it does
    """
    ok: bool
    object: str
    arrows: typing.List[str] = []
    product_size: int
    equalized: int
    injective: bool
    image_matches: bool
    witness: str = None


class ClassifyResult(BaseModel):
    """The classifying sieve of one sense, as printed by the command line.

    Attributes:
    - `object (str)`: The object id
    - `sense (str)`: The sense
    - `member (bool)`: Whether the sense belongs to the subpresheaf
    - `arrows (list[str])`: The morphism ids of the classifying sieve
    - `maximal (bool)`, `closed (bool)`, `principal (bool)`: Properties of
      the sieve
    """
    object: str
    sense: str
    member: bool
    arrows: typing.List[str] = []
    maximal: bool
    closed: bool
    principal: bool


class ClassifierReport(BaseModel):
    """The result of verifying the classifying map of a subpresheaf.

    Attributes:
    - `ok (bool)`: True if every check that ran passed
    - `presheaf_is_sheaf (bool)`: Whether F passes the local sheaf check
    - `subpresheaf_is_sheaf (bool)`: Whether S, as a presheaf, does
    - `checks (list[AxiomCheck])`: `sieve`, `naturality`, `pullback`,
      `closed` in that order
    - `notes (list[str])`: e.g. why the closedness check was skipped
    """
    ok: bool
    presheaf_is_sheaf: bool
    subpresheaf_is_sheaf: bool
    checks: typing.List[AxiomCheck]
    notes: typing.List[str] = []
