from dotenv import load_dotenv
import logging
import os
import sys

from src.catalog_cache import CatalogCache
from src.semigroup import TABLE2_BASIS, hilbert_basis

load_dotenv()

logging.basicConfig(level=os.environ.get('KOSTKA_LOG_LEVEL', 'INFO'),
                    format="%(levelname)s %(name)s: %(message)s")

MAX_RANK = int(os.environ.get('KOSTKA_STORE_MAX_RANK', 6))
JOBS = int(os.environ.get('KOSTKA_JOBS', 1))


cache = CatalogCache(os.environ.get('KOSTKA_FIXTURES'))

for r in range(1, MAX_RANK + 1):
    catalog = hilbert_basis(r, jobs=JOBS)
    if len(catalog) != TABLE2_BASIS[r]:
        print(f"❌ r={r}: computed {len(catalog)} elements, expected {TABLE2_BASIS[r]}")
        sys.exit(3)
    path = cache.save_catalog(catalog)
    print(f"✅ r={r}: {len(catalog)} elements -> {path} ({catalog.content_hash()[:12]})")
