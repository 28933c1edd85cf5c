"""Report service: turns requests into classification reports and tables."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

import numpy as np

from isoforms.config.settings import Settings
from isoforms.geometry.classify import classify, normal_form
from isoforms.geometry.numkit import Tolerance
from isoforms.geometry.orbit import isotropy_dimension, orbit_dimension, symbolic_representative
from isoforms.geometry.segre import (
    SegreSymbol,
    Space,
    count_classes,
    enumerate_symbols,
    euclidean_count_sum_form,
    parse,
)
from isoforms.geometry.varieties import (
    PRINTED_ERRATA,
    DimensionVector,
    dimension_vector,
    invariant_variety,
    reconstruct_symbol,
)
from isoforms.repository.base_repository import TableRepository
from isoforms.schema.report import (
    BlockReport,
    ClassificationReport,
    ClassifyRequest,
    ComponentReport,
    CountReport,
    Parameters,
    ReconstructionReport,
    SymbolReport,
    Table,
    TableRecord,
    VarietyReport,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# (space, n) of the nine regenerated tables, in order
TABLES: tuple[tuple[Space, int], ...] = tuple(
    (space, n) for space in (Space.SPHERICAL, Space.EUCLIDEAN, Space.HYPERBOLIC) for n in (1, 2, 3)
)


class ReportService:
    """Service assembling reports from the geometry core."""

    def __init__(self, settings: Settings, repository: Optional[TableRepository] = None) -> None:
        self.settings = settings
        self.repository = repository

    def tolerance(self, rank_tol: float | None = None, angle_tol: float | None = None) -> Tolerance:
        return self.settings.tolerance(rank_tol, angle_tol)

    def _map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply ``fn`` on the worker pool; results keep the input order."""
        items = list(items)
        if self.settings.workers == 1 or len(items) < 2:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
            return list(pool.map(fn, items))

    def classify(
        self, request: ClassifyRequest, tol: Tolerance | None = None, allow_improper: bool = False
    ) -> ClassificationReport:
        """Full report: symbol, normal form, conjugator and continuous parameters.

        With ``allow_improper`` a time-reversing Lorentz matrix is reported as
        the negative of a proper normal form instead of being rejected.
        """
        tol = tol or self.tolerance()
        matrix = np.asarray(request.matrix, dtype=float)
        symbol = classify(matrix, request.space, tol, allow_improper=allow_improper)
        result = normal_form(matrix, request.space, tol)
        form = result.form
        logger.info(f"{request.space.value} n = {request.n}: {symbol} ({form.descriptor()})")
        return ClassificationReport(
            space=request.space,
            n=request.n,
            type=symbol.kind.label if symbol.kind else None,
            segre=str(symbol),
            isotropy_dim=isotropy_dimension(symbol),
            orbit_dim=orbit_dimension(symbol),
            normal_form=form.descriptor(digits=self.settings.human_digits),
            blocks=[
                BlockReport(kind=b.kind.value, count=b.count, parameter=b.parameter)
                for b in form.blocks
            ],
            normal_form_matrix=result.form_matrix.tolist(),
            conjugator=result.conjugator.tolist(),
            residual=result.residual,
            group_residual=result.group_residual,
            parameters=Parameters(
                angles=form.angles,
                translation_length=form.translation_length,
                boost=form.rapidity,
            ),
            proper=(not result.improper) if request.space is Space.HYPERBOLIC else None,
            diagnostics=[f"{d.code}: {d.message}" for d in result.diagnostics],
        )

    def count(self, space: Space, n: int) -> CountReport:
        counts = count_classes(space, n)
        return CountReport(
            space=counts.space,
            n=n,
            total=counts.total,
            by_kind=counts.by_kind(),
            sum_form=euclidean_count_sum_form(n) if counts.space is Space.EUCLIDEAN else None,
        )

    @staticmethod
    def _symbol_report(symbol: SegreSymbol) -> SymbolReport:
        return SymbolReport(
            segre=str(symbol),
            type=symbol.kind.label if symbol.kind else None,
            isotropy_dim=isotropy_dimension(symbol),
            orbit_dim=orbit_dimension(symbol),
            normal_form=symbolic_representative(symbol).descriptor(symbolic=True),
        )

    def enumerate(self, space: Space, n: int) -> list[SymbolReport]:
        return self._map(self._symbol_report, enumerate_symbols(space, n))

    def varieties(self, space: Space, n: int, segre: str, k: int | None = None) -> list[VarietyReport]:
        """Components of the invariant varieties at degree ``k``, or at every degree below n."""
        symbol = parse(segre, space, n)
        degrees = [k] if k is not None else list(range(n))
        reports = []
        for degree in degrees:
            variety = invariant_variety(symbol, degree)
            reports.append(
                VarietyReport(
                    segre=str(symbol),
                    degree=degree,
                    components=[
                        ComponentReport(
                            factors=[f.render() for f in c.factors],
                            dim=c.dim,
                            text=c.render(),
                        )
                        for c in variety.components
                    ],
                    dims=list(variety.dims),
                )
            )
        return reports

    def reconstruct(self, space: Space, n: int, d: str) -> ReconstructionReport:
        dvecs = DimensionVector.parse(d)
        symbol = reconstruct_symbol(space, n, dvecs)
        return ReconstructionReport(space=space, n=n, d=dvecs.render(), segre=str(symbol))

    @staticmethod
    def _record(symbol: SegreSymbol) -> TableRecord:
        return TableRecord(
            segre=str(symbol),
            descriptor=symbolic_representative(symbol).descriptor(symbolic=True),
            dvector=dimension_vector(symbol).render(),
            varieties=[invariant_variety(symbol, k).render() for k in range(symbol.n)],
        )

    def table(self, space: Space, n: int) -> Table:
        space = Space(space)
        records = self._map(self._record, enumerate_symbols(space, n))
        logger.info(f"Generated {space.value}-{n} with {len(records)} records")
        return Table(space=space, n=n, records=records)

    def tables(self) -> list[Table]:
        return [self.table(space, n) for space, n in TABLES]

    def write_tables(self) -> list[str]:
        """Regenerate every table into the repository; returns the written paths."""
        if self.repository is None:
            raise RuntimeError("no table repository configured")
        paths = [self.repository.save_table(table) for table in self.tables()]
        paths.append(self.repository.save_errata(PRINTED_ERRATA))
        return paths

    def check_tables(self) -> list[str]:
        """Rows that differ from the stored tables, as ``name: stored != computed``."""
        if self.repository is None:
            raise RuntimeError("no table repository configured")
        mismatches = []
        for table in self.tables():
            stored = self.repository.load_table(table.space, table.n)
            if stored is None:
                mismatches.append(f"{table.name}: missing")
                continue
            old = [r.to_line() for r in stored.records]
            new = [r.to_line() for r in table.records]
            if len(old) != len(new):
                mismatches.append(f"{table.name}: {len(old)} rows != {len(new)} rows")
            mismatches += [
                f"{table.name}: {a!r} != {b!r}" for a, b in zip(old, new) if a != b
            ]
        return mismatches
