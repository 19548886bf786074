from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from app.bitdomain import SpongeParams

ExperimentId = Literal[
    "verify", "coset-census", "indiff", "remove-sr", "tradeoff", "separation", "truncation-curve"
]

SPONGE_EXPERIMENTS = ("verify", "coset-census", "indiff", "remove-sr")


class TradeoffCell(BaseModel):
    """One Hellman grid point"""
    r: int = Field(..., ge=1)
    c: int = Field(..., ge=1)
    m: int = Field(..., ge=1, description="chains per table")
    t: int = Field(..., ge=1, description="chain length")
    k: int = Field(..., ge=1, description="table count")
    instances: Optional[int] = Field(None, ge=1)
    challenges: Optional[int] = Field(None, ge=1)


class ExperimentConfig(BaseModel):
    """Resolved configuration of one lab run"""
    experiment: ExperimentId
    r: Optional[int] = Field(None, ge=1, description="rate")
    c: Optional[int] = Field(None, ge=1, description="capacity")
    n: Optional[int] = Field(None, ge=1, description="width for separation and truncation")
    m: Optional[int] = Field(None, ge=1, description="truncated bits, or chains per table for tradeoff")
    t: Optional[int] = Field(None, ge=1)
    k: Optional[int] = Field(None, ge=1)
    T: Optional[int] = Field(None, ge=0, description="online query budget")
    budgets: List[int] = Field(default_factory=list, description="query budgets for the distinguisher sweep")
    q_grid: List[int] = Field(default_factory=list)
    grid: List[TradeoffCell] = Field(default_factory=list)

    distinguisher: Optional[str] = Field(None, description="defaults per experiment")
    variant: Literal["strong", "weak"] = "strong"
    mode: Literal["exact", "monte-carlo"] = "exact"
    sr_bits: Optional[int] = Field(None, ge=0, le=32)
    search_budget: Optional[int] = Field(None, ge=1)

    trials: int = Field(1000, ge=1)
    instances: int = Field(100, ge=1)
    challenges: int = Field(100, ge=1)
    eps_samples: int = Field(4096, ge=1)
    seed: int = Field(0, ge=0)
    workers: Optional[int] = Field(None, ge=1)

    output: Optional[str] = None
    format: Literal["json", "csv"] = "json"

    @model_validator(mode="after")
    def check_required_params(self) -> "ExperimentConfig":
        if self.experiment in SPONGE_EXPERIMENTS:
            if self.r is None or self.c is None:
                raise ValueError(f"{self.experiment} needs --r and --c")
            if self.r > self.c:
                raise ValueError(f"construction requires r <= c (got r={self.r}, c={self.c})")
        if self.experiment in ("separation", "truncation-curve") and self.n is None:
            raise ValueError(f"{self.experiment} needs --n")
        if self.experiment == "truncation-curve" and self.m is None:
            raise ValueError("truncation-curve needs --m")
        if self.experiment == "tradeoff" and not self.grid:
            if None in (self.r, self.c, self.m, self.t, self.k):
                raise ValueError("tradeoff needs a grid or all of --r --c --m --t --k")
            if self.r > self.c:
                raise ValueError(f"construction requires r <= c (got r={self.r}, c={self.c})")
        for cell in self.grid:
            if cell.r > cell.c:
                raise ValueError(f"grid cell requires r <= c (got r={cell.r}, c={cell.c})")
        return self

    def sponge_params(self) -> SpongeParams:
        """Guardrails run here, before any allocation."""
        return SpongeParams(r=self.r, c=self.c)

    def tradeoff_grid(self) -> List[TradeoffCell]:
        if self.grid:
            return list(self.grid)
        return [TradeoffCell(r=self.r, c=self.c, m=self.m, t=self.t, k=self.k)]
