"""Population annealing Monte Carlo for Max-Cut on G-set graphs."""

from ._core import (
    ConfigError,
    EngineConfig,
    FetchError,
    Graph,
    GraphError,
    HexFormatError,
    RunResult,
    SolutionRecord,
    VerificationReport,
    anneal,
    cached_instance,
    choose_delta_beta,
    cut_from_energy,
    cut_value,
    decode_hex,
    default_cache_dir,
    effective_sample_size,
    encode_hex,
    fetch_instance,
    flip_delta,
    ising_energy,
    published_g63_record,
    random_config,
    reweight,
    verify_record,
)

__version__ = "0.1.0"
