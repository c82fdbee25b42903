from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(env_prefix="SMTI_", case_sensitive=True)

    # App
    PROJECT_NAME: str = "smti-solve"
    VERSION: str = "0.1.0"

    # Logging (stderr; stdout belongs to command output)
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "json"  # "json" or "text"

    # LTIU local search
    LTIU_STEP_LIMIT: int = 50000
    LTIU_RANDOM_WALK_P: float = 0.2

    # Genetic algorithm
    GA_POPULATION_SIZE: int = 50
    GA_EVOLUTION_ROUNDS: int = 1000
    GA_CROSSOVER_P: float = 0.7
    GA_MUTATION_P: float = 0.2

    # Exact solvers
    BRUTE_FORCE_MAX_N: int = 8
    DEFAULT_TIME_LIMIT_MS: int = 0  # 0 = unlimited
    TIMEOUT_CHECK_INTERVAL: int = 256  # branch-and-bound nodes between clock reads

    # Benchmark harness
    BENCH_JOBS: int = 1


# Explicitly prevent loading .env file - only use environment variables
settings = Settings(_env_file=None)
