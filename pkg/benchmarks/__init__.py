"""Benchmarks for sutrack: per-frame tracking latency and association throughput."""
