"""
Configuration settings for the Reed-Muller one-step decoding toolkit.
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Code construction guards
MAX_M_ENCODE = int(os.getenv('RM_MAX_M', '20'))
MAX_M_EXHAUSTIVE = int(os.getenv('RM_MAX_M_EXHAUSTIVE', '12'))
MAX_K_EXHAUSTIVE = int(os.getenv('RM_MAX_K_EXHAUSTIVE', '20'))

# Geometry guards
BRUTEFORCE_MAX_POINTS = int(os.getenv('RM_BRUTEFORCE_MAX_POINTS', '32'))

# Recovery set guards
MAX_LARGE_SETS = int(os.getenv('RM_MAX_LARGE_SETS', '100000'))
MAX_FAMILY_SETS = int(os.getenv('RM_MAX_FAMILY_SETS', '500000'))
MINIMALITY_MAX_N = int(os.getenv('RM_MINIMALITY_MAX_N', '16'))

# Oracle guards
ML_ORACLE_MAX_K = int(os.getenv('RM_ML_ORACLE_MAX_K', '20'))
ML_ORACLE_MAX_CELLS = int(os.getenv('RM_ML_ORACLE_MAX_CELLS', str(2 ** 26)))

# Campaign settings
CAMPAIGN_CAP = int(os.getenv('RM_CAMPAIGN_CAP', str(10 ** 7)))
WITNESS_CAP = int(os.getenv('RM_WITNESS_CAP', '20'))
DEFAULT_WORKERS = int(os.getenv('RM_WORKERS', '1'))
BATCH_SIZE = int(os.getenv('RM_BATCH_SIZE', '16384'))
DEFAULT_RANDOM_MESSAGES = 256
DEFAULT_SAMPLED_TRIALS = 10000

# Reproducibility
PRNG_ALGORITHM = 'PCG64'
REPORT_SCHEMA_VERSION = 1

# File Paths
REPORT_DIR = os.getenv('RM_REPORT_DIR', 'reports')
LOG_FILE = os.getenv('LOG_FILE', '')

# HTTP service
HOST = os.getenv('RM_HOST', '127.0.0.1')
PORT = int(os.getenv('RM_PORT', '8080'))

# Logging
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
