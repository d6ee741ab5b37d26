#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Performance Monitor - Temps d'exécution des commandes et des suites

Les durées ne vont que dans les logs : les rapports restent identiques
octet pour octet d'une exécution à l'autre.
"""

import logging
import time
from collections import defaultdict, deque
from contextlib import contextmanager
from typing import Any, Dict

logger = logging.getLogger(__name__)


class PerformanceMonitor:
    """
    Moniteur de durées par étape (commande, suite, propriété)
    """

    def __init__(self, max_records: int = 1000):
        self.max_records = max_records
        self.records = deque(maxlen=max_records)
        self.stage_stats = defaultdict(list)
        self.start_time = time.perf_counter()

    def record(self, stage: str, execution_time_ms: float, passed: bool = True):
        """Enregistre la durée d'une étape"""
        record = {
            'stage': stage,
            'execution_time_ms': execution_time_ms,
            'passed': passed,
        }
        self.records.append(record)
        self.stage_stats[stage].append(record)

    @contextmanager
    def track(self, stage: str):
        """Chronomètre un bloc ; l'échec éventuel est enregistré puis propagé"""
        started = time.perf_counter()
        passed = True
        try:
            yield
        except Exception:
            passed = False
            raise
        finally:
            self.record(stage, (time.perf_counter() - started) * 1000.0, passed)

    def get_metrics(self) -> Dict[str, Any]:
        """Retourne les métriques agrégées par étape"""
        if not self.records:
            return {'total_records': 0, 'stages': {}}
        stages = {}
        for stage, records in self.stage_stats.items():
            times = [r['execution_time_ms'] for r in records]
            stages[stage] = {
                'count': len(records),
                'avg_execution_time_ms': sum(times) / len(times),
                'max_execution_time_ms': max(times),
                'failures': sum(1 for r in records if not r['passed']),
            }
        return {
            'total_records': len(self.records),
            'uptime_seconds': time.perf_counter() - self.start_time,
            'stages': stages,
            'slowest_stage': max(stages, key=lambda s: stages[s]['max_execution_time_ms']),
        }

    def log_summary(self, level: int = logging.INFO):
        """Écrit le résumé dans les logs (stderr)"""
        metrics = self.get_metrics()
        for stage, stats in sorted(metrics['stages'].items()):
            logger.log(level, f"⏱️ {stage}: {stats['count']}x, "
                              f"moy {stats['avg_execution_time_ms']:.1f} ms, "
                              f"max {stats['max_execution_time_ms']:.1f} ms")

    def reset(self):
        self.records.clear()
        self.stage_stats.clear()
        self.start_time = time.perf_counter()
