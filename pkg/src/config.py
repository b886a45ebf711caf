import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    TOLERANCE = float(os.getenv("ABC_TOLERANCE", 1e-9))

    # Exhaustive search limits (39.3M trees at n = 24)
    N_MAX = int(os.getenv("ABC_N_MAX", 24))
    N_HARD_CAP = int(os.getenv("ABC_N_HARD_CAP", 26))
    THM1_N_MAX = int(os.getenv("ABC_THM1_N_MAX", 12))
    TREES_PER_SECOND = float(os.getenv("ABC_TREES_PER_SECOND", 40000.0))

    WORKERS = int(os.getenv("ABC_WORKERS", os.cpu_count() or 1))
    JOBS_PER_WORKER = int(os.getenv("ABC_JOBS_PER_WORKER", 4))

    # Unset means no checkpointing
    CHECKPOINT_DIR = os.getenv("ABC_CHECKPOINT_DIR") or None
    EXPORT_DIR = os.getenv("ABC_EXPORT_DIR", "./abc_exports")
    SEED = int(os.getenv("ABC_SEED", 0))
