"""Request, report and table-record schemas (the JSON wire format)."""

from pydantic import BaseModel, Field, model_validator

from isoforms.geometry.segre import Space


class ClassifyRequest(BaseModel):
    """A single isometry: (n+1)x(n+1) matrix in O(n+1), Euc(n) or O(1,n)."""

    space: Space
    n: int = Field(..., ge=0, description="Dimension of the space form")
    matrix: list[list[float]]

    @model_validator(mode="after")
    def check_shape(self) -> "ClassifyRequest":
        size = self.n + 1
        if len(self.matrix) != size or any(len(row) != size for row in self.matrix):
            raise ValueError(f"matrix must be {size}x{size} for n = {self.n}")
        return self


class BlockReport(BaseModel):
    kind: str
    count: int
    parameter: float | None = None


class Parameters(BaseModel):
    """Continuous invariants of the normal form."""

    angles: list[float] = Field(default_factory=list)
    translation_length: float | None = None
    boost: float | None = None


class ClassificationReport(BaseModel):
    space: Space
    n: int
    type: str | None = Field(None, description="elliptic, parabolic or hyperbolic")
    segre: str
    isotropy_dim: int
    orbit_dim: int
    normal_form: str
    blocks: list[BlockReport]
    normal_form_matrix: list[list[float]]
    conjugator: list[list[float]]
    residual: float
    group_residual: float
    parameters: Parameters
    proper: bool | None = Field(None, description="Time orientation, hyperbolic space only")
    diagnostics: list[str] = Field(default_factory=list)


class CountReport(BaseModel):
    space: Space
    n: int
    total: int
    by_kind: dict[str, int] = Field(default_factory=dict)
    sum_form: int | None = Field(None, description="Euclidean count from the double-sum form")


class SymbolReport(BaseModel):
    segre: str
    type: str | None = None
    isotropy_dim: int
    orbit_dim: int
    normal_form: str


class ComponentReport(BaseModel):
    factors: list[str]
    dim: int
    text: str


class VarietyReport(BaseModel):
    segre: str
    degree: int
    components: list[ComponentReport]
    dims: list[int]


class ReconstructionReport(BaseModel):
    space: Space
    n: int
    d: str
    segre: str


class TableRecord(BaseModel):
    """One row of a regenerated classification table."""

    segre: str
    descriptor: str
    dvector: str
    varieties: list[str] = Field(default_factory=list, description="Components of Gamma(0) .. Gamma(n-1)")

    def to_line(self) -> str:
        return "\t".join([self.segre, self.descriptor, self.dvector, *self.varieties])


class Table(BaseModel):
    space: Space
    n: int
    records: list[TableRecord]

    @property
    def name(self) -> str:
        return f"{self.space.value}-{self.n}"

    def to_text(self) -> str:
        return "".join(record.to_line() + "\n" for record in self.records)
