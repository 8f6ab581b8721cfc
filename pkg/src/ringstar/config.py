"""Default resource bounds and determinism knobs.

All scans are deterministic: sampled checks draw from a generator seeded
with SAMPLE_SEED unless the caller overrides it.
"""

# Largest carrier allowed for exhaustive predicates (annihilator scans are
# O(order^2) to O(order^3); this keeps order-10000 matrix rings feasible).
CARRIER_BOUND = 20_000

# Full order x order index tables are materialized only below this size;
# larger rings fall back to chunked row computation.
TABLE_BOUND = 3_200

# validate_axioms(mode="auto") switches from exhaustive to sampled here.
AXIOM_EXHAUSTIVE_BOUND = 2_000

# Tuples drawn per axiom in sampled mode.
SAMPLE_TUPLES = 100_000

SAMPLE_SEED = 0xA15E

# Cap on projection families instantiated per supremum-compatibility check.
FAMILY_CAP = 10_000
