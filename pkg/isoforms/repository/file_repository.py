"""Golden tables as UTF-8 text files, one record per line."""

import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Optional

from isoforms.config.settings import Settings
from isoforms.errors import InputError
from isoforms.geometry.segre import Space
from isoforms.geometry.varieties import Erratum
from isoforms.repository.base_repository import TableRepository
from isoforms.schema.report import Table, TableRecord

logger = logging.getLogger(__name__)


class FileTableRepository(TableRepository):
    """Stores ``<space>-<n>.tsv`` files and ``errata.json`` under one directory."""

    def __init__(self, settings: Settings, root: str | Path | None = None) -> None:
        self.settings = settings
        self.root = Path(root if root is not None else settings.golden_dir)

    def _path(self, space: Space, n: int) -> Path:
        return self.root / f"{Space(space).value}-{n}.tsv"

    def save_table(self, table: Table) -> str:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(table.space, table.n)
        # newline="" keeps the bytes identical across platforms
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(table.to_text())
        logger.info(f"Wrote {len(table.records)} records to {path}")
        return str(path)

    def load_table(self, space: Space, n: int) -> Optional[Table]:
        path = self._path(space, n)
        if not path.exists():
            return None
        records = []
        for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            fields = line.split("\t")
            if len(fields) < 3:
                raise InputError(f"{path}:{number}: expected at least 3 tab-separated fields")
            segre, descriptor, dvector, *varieties = fields
            records.append(
                TableRecord(segre=segre, descriptor=descriptor, dvector=dvector, varieties=varieties)
            )
        return Table(space=space, n=n, records=records)

    def save_errata(self, errata: tuple[Erratum, ...]) -> str:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.root / "errata.json"
        payload = [asdict(e) | {"space": e.space.value} for e in errata]
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return str(path)
