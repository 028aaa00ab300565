# utils/query_tracker.py
import logging
from typing import Dict

logger = logging.getLogger(__name__)


class QueryTracker:
    """Track oracle queries issued during one dialogue"""

    def __init__(self):
        self.queries = {
            'positive': 0,
            'correctness': 0,
            'probe': 0,
            'cached': 0,
            'membership': 0,
            'distinguishing': 0
        }

    def add_positive_query(self):
        """Track q_wit+"""
        self.queries['positive'] += 1

    def add_correctness_query(self, probe: bool = False):
        """Track an answered q_corr (probes are correctness queries too)"""
        self.queries['correctness'] += 1
        if probe:
            self.queries['probe'] += 1

    def add_cached_verdict(self):
        """Track a q_corr answered from the verdict memo"""
        self.queries['cached'] += 1

    def add_membership_query(self):
        self.queries['membership'] += 1

    def add_distinguishing_query(self):
        self.queries['distinguishing'] += 1

    @property
    def total(self) -> int:
        return sum(count for name, count in self.queries.items() if name not in ('probe', 'cached'))

    def get_summary(self) -> Dict:
        """Get query summary as dict"""
        return {
            'positive_queries': self.queries['positive'],
            'correctness_queries': self.queries['correctness'],
            'probe_queries': self.queries['probe'],
            'cached_verdicts': self.queries['cached'],
            'membership_queries': self.queries['membership'],
            'distinguishing_queries': self.queries['distinguishing'],
            'total_queries': self.total
        }

    def log_summary(self):
        summary = self.get_summary()
        logger.debug(
            f"Queries: {summary['positive_queries']} q_wit+, "
            f"{summary['correctness_queries']} q_corr ({summary['probe_queries']} probes, "
            f"{summary['cached_verdicts']} memoised), {summary['membership_queries']} q_mem, "
            f"{summary['distinguishing_queries']} q_diff"
        )
