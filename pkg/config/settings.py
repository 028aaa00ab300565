from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application
    APP_ENV: str = "development"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Database (run ledger)
    DATABASE_URL: str = "sqlite:///ogis_lab.db"

    # Reproducibility
    OGIS_LAB_SEED: int = 42

    # Dialogue defaults
    DEFAULT_STEP_BUDGET: int = 1000
    DEFAULT_STABILITY_WINDOW: int = 25
    DEFAULT_MEMORY_BOUND: int = 4096  # bytes

    # Families
    NOTPB_MAX_INDEX: int = 50      # chain learner bias for Family 2
    NOTCB_BOUND: int = 8
    CBNOTPB_BOUND: int = 6
    PB_MAX_EXPONENT: int = 12

    # Adversary search
    ADVERSARY_BUDGET: int = 10_000
    ADVERSARY_MAX_EXPONENT: int = 5
    ADVERSARY_CONTINUATION: int = 60

    # Harness
    MAX_WORKERS: int = 4

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


# Global settings instance
settings = Settings()
