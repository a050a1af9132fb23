import json
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, TypedDict, Union
from typing_extensions import Self


USER_HOME = Path.home()
PACKAGE_ROOT = Path(__file__).parent.resolve()

USER_CONFIG_JSON = USER_HOME / '.psmod' / 'psmod.config.json'


class CatalogExpected(TypedDict, total=False):
    """Hand-derived values for one catalog ideal. Absent keys are simply not checked."""

    betti: List[int]
    pd: int
    dim: int
    cm: bool
    gorenstein: bool
    cm_type: Optional[int]
    hs_values: List[int]
    vertices: List[List[int]]
    candidate_mu0: int
    empirical_mu0: int
    flat: bool


class CatalogEntry(TypedDict):
    """Shape of each entry in `assets/catalog.json`."""

    name: str
    variables: List[str]
    generators: List[str]
    map_images: Optional[List[str]]  # None when the entry is not a flatness example
    mu_max: int
    expected: CatalogExpected


CATALOG: List[CatalogEntry] = json.loads((PACKAGE_ROOT / 'assets' / 'catalog.json').read_text(encoding='utf-8'))
CATALOG_BY_NAME: Dict[str, CatalogEntry] = {entry['name']: entry for entry in CATALOG}


class Settings(NamedTuple):
    field: str = 'zp:32003'
    # soft caps, lifted by `--allow-large`
    max_variables: int = 6
    max_degree: int = 16
    # above this many columns injectivity is certified by an empty syzygy module instead of minors
    minor_column_limit: int = 4
    tail_passes: int = 32
    max_reduction_steps: int = 200_000
    max_workers: int = 4

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> Self:
        """
        Parse the contents of a `psmod.config.json` file from a path. Keys not present
        keep their defaults.
        """
        if isinstance(path, str):
            path = Path(path)

        doc = json.loads(path.read_text(encoding='utf-8'))
        known = {k: v for k, v in doc.items() if k in cls._fields}
        return cls(**known)


# default to built-in settings when the user has no config file
cfg = Settings.from_file(USER_CONFIG_JSON) if USER_CONFIG_JSON.is_file() else Settings()
