import json
import logging
import os

from src import config
from src.errors import AuditFailure
from src.partition_core import KostkaPair, Partition
from src.semigroup import BasisCatalog, hilbert_basis

logger = logging.getLogger(__name__)

CATALOG_VERSION = 1


class CatalogCache:
    def __init__(self, fixtures_dir=None):
        self.fixtures_dir = fixtures_dir or config.FIXTURES_DIR

    def path_for(self, rank):
        return os.path.join(self.fixtures_dir, f"kostka_basis_r{rank}.json")

    def load_catalog(self, rank):
        """
        Load a persisted basis catalog and verify its content hash

        Args:
            rank (int): rank r of the catalog

        Returns:
            BasisCatalog or None if no fixture exists

        Raises:
            AuditFailure: the stored hash or count does not match the elements
        """
        path = self.path_for(rank)
        if not os.path.exists(path):
            logger.info("⚠️  Catalog not found: %s", path)
            return None
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)

        if data.get('version') != CATALOG_VERSION:
            raise AuditFailure(f"{path}: unsupported catalog version {data.get('version')}")
        catalog = BasisCatalog(
            rank=data['rank'],
            elements=tuple(KostkaPair(Partition(e['lambda']), Partition(e['mu']), data['rank'])
                           for e in data['elements']),
            provenance=tuple(data.get('provenance', [])),
        )
        if data['rank'] != rank or data['count'] != len(catalog):
            raise AuditFailure(f"{path}: header says r={data['rank']}, count={data['count']}")
        if catalog.content_hash() != data['content_hash']:
            raise AuditFailure(f"{path}: content hash mismatch")
        logger.info("✅ Catalog loaded: r=%d, %d elements", rank, len(catalog))
        return catalog

    def save_catalog(self, catalog):
        """Write catalog as versioned JSON; single writer."""
        os.makedirs(self.fixtures_dir, exist_ok=True)
        payload = {'version': CATALOG_VERSION, **catalog.to_dict()}
        path = self.path_for(catalog.rank)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2, sort_keys=True, ensure_ascii=False)
            f.write("\n")
        logger.info("✅ Saved catalog r=%d to %s", catalog.rank, path)
        return path

    def get_or_compute(self, rank, jobs=1, rank_cap=None):
        """Persisted catalog if present, otherwise compute and persist it."""
        catalog = self.load_catalog(rank)
        if catalog is not None:
            return catalog
        logger.info("🧮 Computing Hilbert basis for r=%d", rank)
        catalog = hilbert_basis(rank, jobs=jobs, rank_cap=rank_cap)
        self.save_catalog(catalog)
        return catalog

    @staticmethod
    def diff(expected, actual):
        """
        Structural difference between two catalogs of the same rank

        Returns:
            dict: {
                'missing': pairs in expected but not actual,
                'unexpected': pairs in actual but not expected,
                'matched': bool
            }
        """
        expected_keys = {(e.lam, e.mu) for e in expected}
        actual_keys = {(e.lam, e.mu) for e in actual}
        missing = sorted(expected_keys - actual_keys, key=lambda k: (k[0].size, k[0].parts, k[1].parts))
        unexpected = sorted(actual_keys - expected_keys, key=lambda k: (k[0].size, k[0].parts, k[1].parts))
        return {
            'missing': [{'lambda': list(l), 'mu': list(m)} for l, m in missing],
            'unexpected': [{'lambda': list(l), 'mu': list(m)} for l, m in unexpected],
            'matched': not missing and not unexpected,
        }

    def get_cache_stats(self):
        """Element count per persisted rank"""
        stats = {}
        if not os.path.isdir(self.fixtures_dir):
            return {'total_catalogs': 0, 'ranks': stats}
        for name in sorted(os.listdir(self.fixtures_dir)):
            if name.startswith('kostka_basis_r') and name.endswith('.json'):
                with open(os.path.join(self.fixtures_dir, name), 'r', encoding='utf-8') as f:
                    data = json.load(f)
                stats[data['rank']] = data['count']
        return {'total_catalogs': len(stats), 'ranks': stats}
