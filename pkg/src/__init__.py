"""
Signature-based Record Linkage - Core Source Package.

Modules:
- model: Records, databases, combinations, signatures and matches.
- config: Settings, config-file loader and JSON schema validation.
- ingest: CSV databases and ground truth.
- selection: Completeness/Gini scoring and the Apriori combination lattice.
- signatures: Transforms, record graph, attribute and relational signatures.
- matching: Candidate generation and the two-stage matcher.
- evaluation: Precision/recall, threshold sweeps and runtimes.
- pipeline: Timed steps, the linkage orchestrator and the worker pool.
- reporting: Output file writers.
- synthgen: Synthetic households with missing values and typos.
"""
