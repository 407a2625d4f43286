#!/usr/bin/env python3
"""Regenerate the synthetic fixture dataset used by the test suites.

Output is deterministic: every random stream is seeded from a fixed string.
Run from any directory: `python3 crates/core/tests/fixtures/generate.py`.
The values are synthetic. Only the regional cost table reproduces published
numbers (IEA WEO 2023 regional capex / opex for 2050).
"""
import csv
import json
import math
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "..", "data")

END_YEAR = 2024
WINDOW = 10
FIRST_YEAR = 2001
STEPS = 168


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def write_csv(name, header, rows):
    path = os.path.join(HERE, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


countries = [r["iso3"] for r in read_csv(os.path.join(DATA, "countries.csv"))]
names = {r["iso3"]: r["name"] for r in read_csv(os.path.join(DATA, "countries.csv"))}
grades = [(r["grade"], float(r["rate"])) for r in read_csv(os.path.join(DATA, "grades.csv"))]
assert len(countries) == 254 and len(grades) == 21

# ---------------------------------------------------------------- regions
REGION_LISTS = {
    "Africa": "DZA AGO BEN BWA BFA BDI CPV CMR CAF TCD COM COG COD CIV DJI EGY GNQ ERI SWZ ETH GAB GMB GHA "
    "GIN GNB KEN LSO LBR LBY MDG MWI MLI MRT MUS MYT MAR MOZ NAM NER NGA REU RWA SHN STP SEN SYC SLE SOM ZAF "
    "SSD SDN TZA TGO TUN UGA ESH ZMB ZWE IOT ATF",
    "North America": "USA CAN MEX BMU SPM GRL UMI",
    "Central and South America": "ARG BOL BRA CHL COL ECU GUY PRY PER SUR URY VEN FLK GUF SGS BLZ CRI SLV "
    "GTM HND NIC PAN AIA ATG ABW BHS BRB BES VGB CYM CUB CUW DMA DOM GRD GLP HTI JAM MTQ MSR PRI BLM KNA LCA "
    "MAF VCT SXM TTO TCA VIR XCL",
    "Europe": "ALB AND AUT BEL BIH BGR HRV CYP CZE DNK EST FRO FIN FRA DEU GIB GRC GGY HUN ISL IRL IMN ITA JEY "
    "XKO LVA LIE LTU LUX MLT MDA MCO MNE NLD MKD NOR POL PRT ROU SMR SRB SVK SVN ESP SJM SWE CHE TUR UKR GBR "
    "VAT ALA BLR XNC XAD BVT",
    "Eurasia": "RUS ARM AZE GEO KAZ KGZ TJK TKM UZB",
    "Middle East": "BHR IRN IRQ ISR JOR KWT LBN OMN QAT SAU SYR ARE YEM PSE",
    "China": "CHN HKG MAC",
    "India": "IND",
    "Japan": "JPN",
}
region_of = {}
for region, codes in REGION_LISTS.items():
    for c in codes.split():
        assert c in names, c
        assert c not in region_of, c
        region_of[c] = region
for c in countries:
    region_of.setdefault(c, "Asia Pacific")

write_csv("country_regions.csv", ["iso3", "region"], [(c, region_of[c]) for c in countries])

# Published regional values; North America is supplied as two rows whose
# arithmetic mean equals the published regional figure.
write_csv(
    "regions.csv",
    ["region", "wind_capex_usd_per_kw", "pv_capex_usd_per_kw", "wind_opex_pct", "pv_opex_pct", "price_year"],
    [
        ("Africa", 1630, 510, 2.6, 3.7, 2023),
        ("Asia Pacific", 1728, 479, 2.6, 3.2, 2023),
        ("Central and South America", 910, 312, 2.6, 3.3, 2023),
        ("Eurasia", 1426, 635, 2.6, 3.6, 2023),
        ("Europe", 1614, 427, 2.6, 2.9, 2023),
        ("Middle East", 1666, 229, 2.6, 3.6, 2023),
        ("North America", 1028, 430, 2.8, 3.6, 2023),
        ("North America", 1200, 486, 2.8, 3.6, 2023),
        ("China", 999, 291, 2.5, 3.6, 2023),
        ("India", 999, 250, 2.7, 3.3, 2023),
        ("Japan", 3185, 895, 2.6, 2.6, 2023),
    ],
)

write_csv(
    "inflation.csv",
    ["year", "rate"],
    [(2015, 0.001), (2016, 0.013), (2017, 0.021), (2018, 0.024), (2019, 0.018),
     (2020, 0.012), (2021, 0.047), (2022, 0.080), (2023, 0.041)],
)

# ---------------------------------------------------------------- coverage
ISLAND_OVERRIDES = "COK CXR SGS XSP XCL XPI BVT HMD NFK PCN TKL NIU UMI IOT".split()
MUST_DAMODARAN = ("ARG SAU QAT JPN PHL KGZ BLR USA DEU CHN IND ARE PER MEX IDN MWI GNB VEN LBN LKA UKR GRC "
                  "RUS SOM MMR KWT AUS BRA FRA GBR ZAF EGY NGA KAZ NZL CAN ESP ITA").split()

rng = random.Random("coverage")
pool = [c for c in countries if c not in ISLAND_OVERRIDES and c not in MUST_DAMODARAN]
rng.shuffle(pool)
damodaran = sorted(MUST_DAMODARAN + pool[: 170 - len(MUST_DAMODARAN)])
rest = pool[170 - len(MUST_DAMODARAN):]
wiki_only = sorted(rest[:30])
credendo_only = sorted(rest[30:])
assert len(credendo_only) == 40

overlap_rng = random.Random("overlap")
dam_nonkey = [c for c in damodaran if c not in MUST_DAMODARAN]
wiki_overlap = sorted(overlap_rng.sample(dam_nonkey, 20))
credendo_overlap = sorted(overlap_rng.sample(dam_nonkey, 15) + overlap_rng.sample(wiki_only, 10))
# Damodaran series that stop before the averaging window: resolution must
# fall through to WikiRating.
stale = wiki_overlap[:2]

# Latent credit quality on the 0..20 grade index.
REGION_BASE = {"Europe": 4, "North America": 3, "Japan": 3, "China": 6, "India": 9, "Middle East": 8,
               "Eurasia": 12, "Asia Pacific": 9, "Central and South America": 11, "Africa": 14}
PINNED_GRADE = {"DEU": 0.0, "USA": 1.0, "JPN": 3.0, "QAT": 4.0, "ARE": 4.0, "SAU": 5.0, "PHL": 7.0,
                "KGZ": 19.0, "BLR": 19.5, "VEN": 19.5, "LBN": 19.5, "ARG": 17.0}
latent = {}
for c in countries:
    r = random.Random("latent-" + c)
    latent[c] = PINNED_GRADE.get(c, min(20.0, max(0.0, REGION_BASE[region_of[c]] + r.gauss(0, 3.0))))

year_factor = {}
yr = random.Random("year-factor")
for y in range(FIRST_YEAR, END_YEAR + 1):
    year_factor[y] = 0.98 + 0.02 * yr.random()

dam_rows = []
series = {}
for c in damodaran:
    r = random.Random("damodaran-" + c)
    if c in MUST_DAMODARAN or r.random() < 0.4:
        start = FIRST_YEAR
    else:
        start = r.randint(2002, 2016)
    end = 2012 if c in stale else END_YEAR
    noise = 0.0
    s = {}
    for y in range(start, end + 1):
        noise = 0.3 * noise + r.gauss(0, 2.5)
        g = int(min(20, max(0, math.floor(latent[c] + noise + 0.5))))
        rate = round(grades[g][1] * year_factor[y], 4)
        if c in PINNED_GRADE:
            rate = round(grades[int(PINNED_GRADE[c])][1] * year_factor[y], 4)
        s[y] = rate
    if c == "ARG":
        s[2021] = 0.169
    series[c] = s
    for y, rate in sorted(s.items()):
        dam_rows.append((c, y, f"{rate:.4f}"))
write_csv("damodaran.csv", ["iso3", "year", "rate"], dam_rows)

# Averaging smooths cross-country dispersion on this dataset.
full = [c for c in damodaran if all(y in series[c] for y in range(END_YEAR - WINDOW + 1, END_YEAR + 1))]


def var(xs):
    m = sum(xs) / len(xs)
    return sum((x - m) ** 2 for x in xs) / (len(xs) - 1)


avg_var = var([sum(series[c][y] for y in range(END_YEAR - WINDOW + 1, END_YEAR + 1)) / WINDOW for c in full])
for y in range(END_YEAR - WINDOW + 1, END_YEAR + 1):
    assert avg_var <= var([series[c][y] for c in full]), y


def grade_index(c):
    return int(min(20, max(0, math.floor(latent[c] + 0.5))))


wiki_set = sorted(wiki_only + wiki_overlap)
write_csv("wikirating.csv", ["iso3", "grade"], [(c, grades[grade_index(c)][0]) for c in wiki_set])


def credendo_score(c):
    return 1 + int(math.floor(latent[c] * 6 / 20 + 0.5))


credendo_set = sorted(credendo_only + credendo_overlap)
write_csv("credendo.csv", ["iso3", "score"], [(c, credendo_score(c)) for c in credendo_set])


# Economic rate each country resolves to (mirrors the library cascade).
def credendo_rate(score):
    idx = int(math.floor((score - 1) * 20 / 6 + 0.5))
    return grades[idx][1]


econ = {}
for c in countries:
    s = series.get(c, {})
    window = [v for y, v in s.items() if END_YEAR - WINDOW < y <= END_YEAR]
    if window:
        econ[c] = sum(window) / len(window)
    elif c in wiki_set:
        econ[c] = grades[grade_index(c)][1]
    elif c in credendo_set:
        econ[c] = credendo_rate(credendo_score(c))

# ---------------------------------------------------------------- overrides
ECON_DONOR = {"COK": "NZL", "CXR": "AUS", "SGS": "GBR", "XSP": "PHL", "BVT": "NOR", "HMD": "AUS",
              "NFK": "AUS", "PCN": "NZL", "TKL": "NZL", "NIU": "NZL", "UMI": "USA", "IOT": "GBR"}
ECON_LITERAL = {"XPI": "0.1200", "XCL": "WORST"}
assert set(ECON_DONOR) | set(ECON_LITERAL) == set(ISLAND_OVERRIDES)
for c, d in ECON_DONOR.items():
    econ[c] = econ[d]
worst = max(v for (c, y, v) in [(a, b, float(v)) for a, b, v in dam_rows] if y == END_YEAR)
econ["XPI"] = 0.12
econ["XCL"] = worst
assert len(econ) == 254

max_ie = max(econ.values())

# ---------------------------------------------------------------- hazard
def annuity(i, n=20):
    return i * (1 + i) ** n / ((1 + i) ** n - 1) if i > 0 else 1.0 / n


WRI_MAX = 46.86
covered = sorted(set(countries) - set(ISLAND_OVERRIDES))
hz = random.Random("wri-coverage")
no_wri_candidates = sorted(set(wiki_only + credendo_only) - set(MUST_DAMODARAN))
no_wri = sorted(hz.sample(no_wri_candidates, 48))
wri_countries = [c for c in covered if c not in no_wri]
assert len(wri_countries) == 192


def ratio(c, score):
    i_n = score / WRI_MAX * max_ie
    return annuity(i_n) / annuity(econ[c])


phl_ratio = ratio("PHL", WRI_MAX)
kgz_score = 3.0
kgz_ratio = ratio("KGZ", kgz_score)

wri = {}
for c in wri_countries:
    r = random.Random("wri-" + c)
    if c == "PHL":
        score = WRI_MAX
    elif c == "KGZ":
        score = kgz_score
    else:
        score = round(0.5 + 40.0 * r.random() ** 1.6, 2)
        # Keep the Philippines-analog the largest relative increase and
        # the Kyrgyzstan-analog the largest relative decrease.
        while ratio(c, score) > 0.85 * phl_ratio:
            score = round(score * 0.9, 2)
        while ratio(c, score) < 1.15 * kgz_ratio:
            score = round(score * 1.1 + 0.1, 2)
        score = min(score, 45.0)
    wri[c] = score

wri_rows = []
for c in wri_countries:
    r = random.Random("wri-year-" + c)
    if r.random() < 0.6:
        # an older vintage that the latest year supersedes
        wri_rows.append((c, 2022, f"{min(100.0, wri[c] * (0.9 + 0.2 * r.random())):.2f}"))
    wri_rows.append((c, 2023, f"{wri[c]:.2f}"))
write_csv("wri.csv", ["iso3", "year", "score"], wri_rows)

override_rows = []
for c in sorted(set(countries) - set(wri_countries)):
    region_donors = [d for d in wri_countries if region_of[d] == region_of[c]] or wri_countries
    region_donors = [d for d in region_donors if 1.15 * kgz_ratio <= ratio(c, wri[d]) <= 0.85 * phl_ratio]
    if not region_donors:
        region_donors = sorted(wri_countries, key=lambda d: abs(ratio(c, wri[d]) - 1.0))[:1]
    r = random.Random("donor-" + c)
    donor = r.choice(sorted(region_donors))
    if c in ECON_DONOR and ECON_DONOR[c] in wri and ECON_DONOR[c] == donor:
        override_rows.append((c, donor, "both"))
        continue
    if c in ECON_DONOR:
        override_rows.append((c, ECON_DONOR[c], "economic"))
    elif c in ECON_LITERAL:
        override_rows.append((c, ECON_LITERAL[c], "economic"))
    override_rows.append((c, donor, "hazard"))
write_csv("overrides.csv", ["iso3", "donor_iso3_or_rate", "scope"], sorted(override_rows))

# ---------------------------------------------------------------- potentials
pot_rows = []
for c in countries:
    r = random.Random("potential-" + c)
    pot_rows.append((c, f"{10 ** (8 + 3 * r.random()):.1f}"))
write_csv("potentials.csv", ["iso3", "total_potential_kg"], pot_rows)

# ---------------------------------------------------------------- profiles
SUNNY = {"QAT": (0.95, 0.98, 0.36), "SAU": (0.94, 0.97, 0.34), "ARE": (0.94, 0.97, 0.30),
         "JPN": (0.62, 0.55, 0.17), "PHL": (0.75, 0.65, 0.22)}
REGION_PV = {"Middle East": 0.9, "Africa": 0.85, "Central and South America": 0.8, "India": 0.8,
             "Asia Pacific": 0.75, "North America": 0.75, "China": 0.75, "Eurasia": 0.65, "Europe": 0.6,
             "Japan": 0.62}


def profile(c):
    r = random.Random("profile-" + c)
    if c in SUNNY:
        peak, clear, wind_mean = SUNNY[c]
    else:
        peak = REGION_PV[region_of[c]] * (0.85 + 0.15 * r.random())
        clear = 0.5 + 0.5 * r.random()
        wind_mean = 0.12 + 0.3 * r.random()
    rows = []
    w = wind_mean
    cloud = 1.0
    for step in range(STEPS):
        hour = step % 24
        if hour == 0:
            cloud = clear + (1.0 - clear) * r.random()
        sun = math.sin(math.pi * (hour - 6) / 12.0) if 6 < hour < 18 else 0.0
        pv = max(0.0, min(1.0, peak * sun * cloud))
        w = wind_mean + 0.85 * (w - wind_mean) + r.gauss(0, 0.07)
        w = max(0.0, min(1.0, w))
        rows.append((step, f"{w:.4f}", f"{pv:.4f}"))
    return rows


for c in countries:
    write_csv(os.path.join("profiles", f"{c}.csv"), ["step", "cf_wind", "cf_pv"], profile(c))


# ---------------------------------------------------------------- toy cases
def toy(name, steps, wind, pv):
    write_csv(os.path.join("toy", f"{name}.csv"), ["step", "cf_wind", "cf_pv"],
              [(t, f"{wind(t):.4f}", f"{pv(t):.4f}") for t in range(steps)])


def diurnal(t, peak=0.85):
    h = t % 24
    return peak * math.sin(math.pi * (h - 6) / 12.0) if 6 < h < 18 else 0.0


toy("toy24", 24, lambda t: 0.35 + 0.25 * math.sin(0.7 * t + 1.0), diurnal)
toy("toy12_wind", 12, lambda t: [0.9, 0.7, 0.2, 0.05, 0.0, 0.1, 0.4, 0.8, 0.6, 0.3, 0.15, 0.5][t], lambda t: 0.0)
toy("toy36_pv", 36, lambda t: 0.0, lambda t: diurnal(t, 0.9))
toy("toy48", 48, lambda t: max(0.0, 0.3 + 0.3 * math.sin(0.21 * t) * math.cos(0.05 * t)),
    lambda t: diurnal(t, 0.7 if t < 24 else 0.45))
toy("toy24_flat", 24, lambda t: 1.0, lambda t: 0.0)
toy("toy16_calm", 16, lambda t: 0.6 if t % 8 < 3 else 0.02, lambda t: 0.3 if 4 <= t % 8 <= 6 else 0.0)

# ---------------------------------------------------------------- boundaries
features = []
for k, c in enumerate(countries + ["ATA"]):
    x, y = (k % 20) * 10.0 - 100.0, (k // 20) * 10.0 - 60.0
    features.append({
        "type": "Feature",
        "properties": {"ISO_A3": c, "NAME": names.get(c, "Antarctica")},
        "geometry": {"type": "Polygon",
                     "coordinates": [[[x, y], [x + 9, y], [x + 9, y + 9], [x, y + 9], [x, y]]]},
    })
with open(os.path.join(HERE, "boundaries.geojson"), "w") as f:
    json.dump({"type": "FeatureCollection", "features": features}, f, indent=1)
    f.write("\n")

print(f"damodaran={len(damodaran)} wiki={len(wiki_set)} credendo={len(credendo_set)} "
      f"wri={len(wri_countries)} overrides={len(override_rows)} max_ie={max_ie:.4f}")
