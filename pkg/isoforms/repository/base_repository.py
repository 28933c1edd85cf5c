"""Base interface for table repositories."""

from typing import Optional, Protocol, runtime_checkable

from isoforms.geometry.segre import Space
from isoforms.geometry.varieties import Erratum
from isoforms.schema.report import Table


@runtime_checkable
class TableRepository(Protocol):
    """Protocol for golden table storage implementations."""

    def save_table(self, table: Table) -> str: ...

    def load_table(self, space: Space, n: int) -> Optional[Table]: ...

    def save_errata(self, errata: tuple[Erratum, ...]) -> str: ...
