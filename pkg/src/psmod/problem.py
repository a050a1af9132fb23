"""The JSON problem file read by the command line.

Example::

    {
      "field": "q",
      "variables": ["x", "y"],
      "generators": ["x^2 + y^3", "x*y"],
      "map_images": ["y"],
      "options": {"eta_max": 8, "mu_max": 6}
    }

Module problems write each generator as a vector, ``"[x, y^2]"``; all vectors share a rank.
"""

import json
import re
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from typing_extensions import Annotated, Self

from . import config
from .coeff import field_from_selector
from .config import CatalogEntry
from .errors import ParseError, PsmodError
from .parser import parse_polynomial
from .series import SeriesRing, SeriesVec

_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


class ProblemOptions(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra='forbid')

    eta_max: Annotated[Optional[int], Field(alias='etaMax', ge=0)] = None
    mu: Annotated[Optional[int], Field(ge=0)] = None
    mu_max: Annotated[Optional[int], Field(alias='muMax', ge=0)] = None


class ProblemFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra='forbid')

    field: str = config.cfg.field
    variables: List[str]
    generators: Annotated[List[str], Field(min_length=1)]
    map_images: Annotated[Optional[List[str]], Field(alias='mapImages')] = None
    options: ProblemOptions = ProblemOptions()

    @field_validator('field')
    @classmethod
    def _known_field(cls, value: str) -> str:
        # raises UsageError for unknown selectors or composite p
        return field_from_selector(value).selector

    @field_validator('variables')
    @classmethod
    def _unique_names(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError('at least one variable is required')
        for name in value:
            if not _NAME.match(name):
                raise ValueError(f'{name!r} is not a valid variable name')
        if len(set(value)) != len(value):
            raise ValueError(f'variable names must be unique: {value!r}')
        return value

    @model_validator(mode='after')
    def _expressions_parse(self) -> Self:
        self.parsed_generators()
        self.parsed_map_images()
        return self

    def ring(self) -> SeriesRing:
        return SeriesRing.create(self.field, self.variables)

    def _parse(self, what: str, index: int, text: str, ring: SeriesRing) -> SeriesVec:
        try:
            return parse_polynomial(text, ring)
        except ParseError as exc:
            raise ParseError(f'{what} {index}: {exc.message}', exc.line, exc.column) from exc

    def parsed_generators(self) -> List[SeriesVec]:
        ring = self.ring()
        out = [self._parse('generator', k, text, ring) for k, text in enumerate(self.generators)]
        ranks = {g.rank for g in out}
        if len(ranks) > 1:
            raise ParseError(f'generators mix vector ranks {sorted(ranks)!r}')
        return out

    def parsed_map_images(self) -> List[SeriesVec]:
        if self.map_images is None:
            return []
        ring = self.ring()
        out = [self._parse('map image', k, text, ring) for k, text in enumerate(self.map_images)]
        for k, image in enumerate(out):
            if image.rank != 1:
                raise ParseError(f'map image {k} must be a scalar expression')
        return out

    @property
    def rank(self) -> int:
        return self.parsed_generators()[0].rank

    @classmethod
    def from_catalog(cls, entry: CatalogEntry, field: Optional[str] = None) -> Self:
        return cls(
            field=field or 'q',
            variables=entry['variables'],
            generators=entry['generators'],
            map_images=entry['map_images'],
            options=ProblemOptions(mu_max=entry['mu_max']),
        )

    @classmethod
    def from_text(cls, text: str) -> Self:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f'problem file is not valid JSON: {exc.msg}', exc.lineno, exc.colno) from exc
        try:
            return cls.model_validate(doc)
        except ValidationError as exc:
            first = exc.errors()[0]
            # keep our own error (and its position) when a validator raised it
            original = (first.get('ctx') or {}).get('error')
            if isinstance(original, PsmodError):
                raise original from exc
            where = '.'.join(str(p) for p in first['loc']) or 'problem'
            raise ParseError(f'{where}: {first["msg"]}') from exc

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> Self:
        if isinstance(path, str):
            path = Path(path)
        return cls.from_text(path.read_text(encoding='utf-8'))
