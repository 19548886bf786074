from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Lab configuration.
    Reads environment variables and the .env file.
    """

    # Application
    PROJECT_NAME: str = "Sponge Pre-Computation Lab"
    VERSION: str = "0.1.0"
    DEBUG: bool = False
    ENVIRONMENT: str = "development"

    # Domain guardrails
    MAX_EXACT_N: int = 30
    MAX_TABLE_N: int = 28
    MAX_ENUM_POINTS: int = 8  # S_N enumeration only for N <= 8 (8! = 40320)
    EXHAUSTIVE_CHECK_N: int = 20
    SPOT_CHECK_POINTS: int = 4096
    MAX_TRAPDOOR_N: int = 13

    # Lazy block evaluation
    BLOCK_CACHE_ENTRIES: int = 256
    BLOCK_CACHE_MAX_POINTS: int = 1 << 20  # larger blocks are rebuilt per query
    BLOCK_CACHE_BUDGET_POINTS: int = 1 << 22  # total points held; two uint32 tables per point

    # Execution
    LAB_WORKERS: int = 1
    TRIAL_CHUNK_SIZE: int = 512
    SHOW_PROGRESS: bool = False

    # Statistics
    HOEFFDING_DELTA: float = 1e-6
    SR_ENUM_BITS: int = 16

    # Output
    REPORTS_DIR: str = "./reports"
    METRICS_FILE: str = ""

    class Config:
        env_file = ".env"
        case_sensitive = False


# Create settings instance
settings = Settings()
