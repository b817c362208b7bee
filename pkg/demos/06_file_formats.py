"""File formats: PrefLib soc/toi and Pabulib .pb, with exact round-trips.

Also shows the command-line equivalents, which add manifest and witness
sidecar files for full reproducibility.
"""

from prefforge import (
    parse_pabulib,
    parse_preflib,
    sample,
    serialize_pabulib,
    serialize_preflib,
)

ordinal = sample("mallows", 4, 7, seed=5, norm_phi=0.5).election
soc = serialize_preflib(ordinal, names=("Ada", "Bo", "Cy", "Dee"))
print("--- soc ---")
print(soc.decode(), end="")
assert parse_preflib(soc).to_ordinal() == ordinal

approval = sample("resampling", 5, 6, seed=5, p=0.4, phi=0.6).election
toi = serialize_preflib(approval)
print("--- toi (approved candidates as one tied top group) ---")
print(toi.decode(), end="")
assert parse_preflib(toi).to_approval() == approval

pb = serialize_pabulib(approval, meta={"budget": "100000"})
print("--- pb ---")
print(pb.decode(), end="")
assert parse_pabulib(pb).election == approval

print()
print("Round-trips are exact: parse(serialize(e)) == e for both formats.")
print()
print("CLI equivalents (also write .manifest.json / .witness.json sidecars):")
print("  prefforge sample --culture mallows --m 10 --n 100 --norm-phi 0.5 \\")
print("      --seed 7 --out mallows.soc")
print("  prefforge sample --culture resampling --m 20 --n 50 --p 0.2 --phi 0.6 \\")
print("      --seed 7 --out resampling.pb")
print("  prefforge convert resampling.pb resampling.toi")
print("  prefforge microscope mallows.soc --out microscope")
print("  prefforge map *.soc --out map --distance heuristic")
