import numpy as np

DEFAULT_SEED = 0x9E3779B97F4A7C15
UINT64_LIMIT = 2**64


class RngStream:
    """Reproducible random stream addressed by (seed, stream_id).

    Child streams extend the spawn key, so a stream split into k workers always
    hands the same substreams to the same worker index.
    """

    def __init__(self, seed: int = DEFAULT_SEED, stream_id: int = 0, path: tuple[int, ...] = ()):
        if not 0 <= seed < UINT64_LIMIT or not 0 <= stream_id < UINT64_LIMIT:
            raise ValueError("seed and stream_id must be 64-bit unsigned integers")

        self.seed = seed
        self.stream_id = stream_id
        self.path = path
        sequence = np.random.SeedSequence(seed, spawn_key=(stream_id, *path))
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, index: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id, (*self.path, index))

    def split(self, count: int) -> list["RngStream"]:
        return [self.child(i) for i in range(count)]

    def __getstate__(self) -> dict:
        return {"seed": self.seed, "stream_id": self.stream_id, "path": self.path}

    def __setstate__(self, state: dict) -> None:
        # generator position is not carried across processes; workers get fresh children
        self.__init__(state["seed"], state["stream_id"], state["path"])

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed:#x}, stream_id={self.stream_id}, path={self.path})"
