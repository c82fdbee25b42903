"""
Random Instance Generator

Seeded generator driven by size n, incompleteness probability p1 and tie
probability p2. For every agent (men 0..n-1, then women 0..n-1, all from one
stream): draw a uniform permutation of the opposite sex, delete each entry with
probability p1 (redrawing that agent's list while it comes out empty), then
walk the list assigning rank 1 to the first entry and, for every later entry,
the predecessor's rank with probability p2 or the predecessor's rank + 1.

PRNG: numpy.random.Generator over the PCG64 bit generator, seeded with
numpy.random.SeedSequence(seed). Grid seeds are derived as

    SeedSequence(base_seed, spawn_key=(p1_index, p2_index, replicate)).generate_state(1, uint64)[0]

which is a fixed, documented hash (SeedSequence's hash mixing) of the four integers.
"""
import numpy as np

from smti.core.logging import get_logger
from smti.models.instance import Instance
from smti.models.schemas import GenParams

logger = get_logger(__name__)


def make_rng(seed: int | np.random.Generator) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed; generators pass through unchanged"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derive_seed(base_seed: int, p1_index: int, p2_index: int, replicate: int) -> int:
    """Per-instance seed of a benchmark grid cell replicate"""
    seq = np.random.SeedSequence(base_seed, spawn_key=(p1_index, p2_index, replicate))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _draw_list(rng: np.random.Generator, n: int, p1: float, p2: float) -> tuple[np.ndarray, np.ndarray]:
    """One agent's (partners, ranks); partners in list order"""
    while True:
        order = rng.permutation(n)
        kept = order[rng.random(n) >= p1]
        if kept.size:
            break
    ties = rng.random(kept.size - 1) < p2
    ranks = np.concatenate(([1], 1 + np.cumsum(~ties)))
    return kept, ranks


def generate(params: GenParams) -> Instance:
    """Deterministic random instance for fixed params"""
    rng = make_rng(params.seed)
    n = params.n
    tables = []
    for _side in range(2):
        table = np.zeros((n, n), dtype=np.int64)
        for agent in range(n):
            partners, ranks = _draw_list(rng, n, params.p1, params.p2)
            table[agent, partners] = ranks
        tables.append(table)

    inst = Instance(tables[0], tables[1])
    logger.debug(
        "Instance generated",
        extra={"extra_fields": {
            "n": n, "p1": params.p1, "p2": params.p2, "seed": params.seed,
            "mutual_pairs": int(inst.mutual.sum())
        }}
    )
    return inst
