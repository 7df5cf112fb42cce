"""
Pipeline Module.

Timed pipeline steps (``src.pipeline.base``), the linkage orchestrator
(``src.pipeline.steps``) and the deterministic worker pool
(``src.pipeline.parallel``). Import from the submodules directly.
"""
