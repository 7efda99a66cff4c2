"""Published figures used as regression targets.

Premia are quoted to six decimals, null-premium fee rates to two and
quantiles to four.  Market parameters throughout: r = 0.015, kappa = 0,
sigma = 0.2.
"""

# (kind, row, maturity, l1, g1, protection rate, f2, fair premium)
FAIR_PREMIA = [
    ("buffer", 1, 1, -0.05, 0.05, 0.5, 0.5, -0.007890),
    ("buffer", 2, 1, -0.05, 0.05, 0.8, 0.5, 0.006873),
    ("buffer", 3, 1, -0.05, 0.05, 0.8, 0.8, -0.012623),
    ("buffer", 4, 1, -0.05, 0.10, 0.5, 0.5, 0.000730),
    ("buffer", 5, 1, -0.05, 0.10, 0.6, 0.5, 0.005651),
    ("buffer", 6, 1, -0.05, 0.10, 0.7, 0.5, 0.010572),
    ("buffer", 7, 1, -0.05, 0.10, 0.8, 0.5, 0.015493),
    ("buffer", 8, 1, -0.05, 0.10, 0.9, 0.5, 0.020414),
    ("buffer", 9, 1, -0.05, 0.10, 0.8, 0.8, 0.001168),
    ("buffer", 10, 1, -0.10, 0.10, 0.5, 0.5, -0.008082),
    ("buffer", 11, 1, -0.10, 0.10, 0.8, 0.5, 0.001393),
    ("buffer", 12, 1, -0.10, 0.10, 0.8, 0.8, -0.012931),
    ("buffer", 13, 2, -0.05, 0.05, 0.8, 0.5, 0.006601),
    ("buffer", 14, 2, -0.05, 0.10, 0.8, 0.5, 0.015960),
    ("buffer", 15, 2, -0.10, 0.10, 0.8, 0.5, 0.000237),
    ("floor", 1, 1, -0.05, 0.05, 0.5, 0.5, -0.021180),
    ("floor", 2, 1, -0.05, 0.05, 0.8, 0.5, -0.014391),
    ("floor", 3, 1, -0.05, 0.10, 0.5, 0.5, -0.012560),
    ("floor", 4, 1, -0.05, 0.10, 0.8, 0.5, -0.005771),
    ("floor", 5, 1, -0.05, 0.10, 0.8, 0.8, -0.049895),
    ("floor", 6, 1, -0.10, 0.10, 0.5, 0.5, -0.003748),
    ("floor", 7, 1, -0.10, 0.10, 0.8, 0.5, 0.008328),
    ("floor", 8, 1, -0.15, 0.10, 0.5, 0.5, 0.002672),
    ("floor", 9, 1, -0.15, 0.10, 0.6, 0.5, 0.007982),
    ("floor", 10, 1, -0.15, 0.10, 0.7, 0.5, 0.013291),
    ("floor", 11, 1, -0.15, 0.10, 0.8, 0.5, 0.018601),
    ("floor", 12, 1, -0.15, 0.10, 0.9, 0.5, 0.023910),
    ("floor", 13, 1, -0.15, 0.10, 0.8, 0.8, 0.004276),
    ("floor", 14, 2, -0.05, 0.05, 0.8, 0.5, -0.033581),
    ("floor", 15, 2, -0.05, 0.10, 0.8, 0.5, -0.024222),
    ("floor", 16, 2, -0.10, 0.10, 0.8, 0.5, -0.008500),
    ("floor", 17, 2, -0.15, 0.10, 0.8, 0.5, 0.004358),
    ("floor", 18, 2, -0.15, 0.10, 0.8, 0.8, -0.021315),
]

# (kind, row, maturity, l1, g1, protection rate, f2 with null premium)
NULL_FEE_RATES = [
    ("buffer", 1, 1, -0.05, 0.05, 0.5, 0.38),
    ("buffer", 2, 1, -0.05, 0.05, 0.8, 0.61),
    ("buffer", 3, 1, -0.05, 0.10, 0.5, 0.52),
    ("buffer", 4, 1, -0.05, 0.10, 0.6, 0.62),
    ("buffer", 5, 1, -0.05, 0.10, 0.7, 0.72),
    ("buffer", 6, 1, -0.05, 0.10, 0.8, 0.82),
    ("buffer", 7, 1, -0.05, 0.10, 0.9, 0.93),
    ("buffer", 8, 1, -0.10, 0.10, 0.5, 0.33),
    ("buffer", 9, 1, -0.10, 0.10, 0.8, 0.53),
    ("buffer", 10, 2, -0.05, 0.05, 0.8, 0.56),
    ("buffer", 11, 2, -0.05, 0.10, 0.8, 0.69),
    ("buffer", 12, 2, -0.10, 0.10, 0.8, 0.50),
    ("floor", 1, 1, -0.05, 0.05, 0.5, 0.17),
    ("floor", 2, 1, -0.05, 0.05, 0.8, 0.28),
    ("floor", 3, 1, -0.05, 0.10, 0.5, 0.24),
    ("floor", 4, 1, -0.05, 0.10, 0.8, 0.38),
    ("floor", 5, 1, -0.10, 0.10, 0.5, 0.42),
    ("floor", 6, 1, -0.10, 0.10, 0.8, 0.67),
    ("floor", 7, 1, -0.15, 0.10, 0.5, 0.56),
    ("floor", 8, 1, -0.15, 0.10, 0.6, 0.67),
    ("floor", 9, 1, -0.15, 0.10, 0.7, 0.78),
    ("floor", 10, 1, -0.15, 0.10, 0.8, 0.89),
    ("floor", 11, 1, -0.15, 0.10, 0.9, 1.00),
    ("floor", 12, 2, -0.05, 0.05, 0.8, 0.18),
    ("floor", 13, 2, -0.05, 0.10, 0.8, 0.22),
    ("floor", 14, 2, -0.10, 0.10, 0.8, 0.40),
    ("floor", 15, 2, -0.15, 0.10, 0.8, 0.55),
]

# Fee rates fitted to the 2022-02-02 S&P 500 option chain (mid prices).
MARKET_FEE_RATES = {
    "Buffer1": 0.63,
    "Buffer2": 1.51,
    "Buffer3": 1.21,
    "Floor1": 0.52,
    "Floor2": 0.73,
    "Floor3": 0.98,
}

QUANTILE_COLUMNS = ("Min", "5%", "10%", "25%", "50%", "75%", "90%", "Max")

# One-year trailing returns of the S&P 500, windows starting 2021-05-03..2021-12-23.
SP500_DOWNTURN = {
    "Original": (-0.2027, -0.1822, -0.1777, -0.1543, -0.1180, -0.0649, -0.0365, 0.0325),
    "Buffer1": (-0.1264, -0.1161, -0.1139, -0.1021, -0.0840, -0.0575, -0.0365, 0.0325),
    "Buffer2": (-0.0958, -0.0897, -0.0883, -0.0813, -0.0704, -0.0545, -0.0365, 0.0325),
    "Buffer3": (-0.1308, -0.1247, -0.1233, -0.1163, -0.1054, -0.0649, -0.0365, 0.0325),
    "Floor1": (-0.1527, -0.1322, -0.1277, -0.1043, -0.0680, -0.0325, -0.0183, 0.0325),
    "Floor2": (-0.1327, -0.1122, -0.1077, -0.0843, -0.0480, -0.0195, -0.0110, 0.0325),
    "Floor3": (-0.0977, -0.0772, -0.0727, -0.0493, -0.0354, -0.0195, -0.0110, 0.0325),
}

# All one-year trailing returns of the S&P 500 from closes 2020-01-02..2022-12-23.
SP500_FULL = {
    "Original": (-0.2027, -0.1654, -0.1444, -0.0617, 0.1641, 0.3236, 0.4172, 0.7382),
    "Buffer1": (-0.1264, -0.1077, -0.0972, -0.0559, 0.0922, 0.1512, 0.1859, 0.3046),
    "Buffer2": (-0.2255, -0.0969, -0.0880, -0.0704, -0.0269, 0.0219, 0.0726, 0.0997),
    "Buffer3": (-0.1308, -0.1196, -0.1133, -0.0617, 0.0427, 0.0655, 0.0882, 0.0997),
    "Floor1": (-0.1527, -0.1154, -0.0944, -0.0309, 0.1308, 0.2073, 0.2523, 0.4063),
    "Floor2": (-0.1327, -0.0954, -0.0744, -0.0185, 0.1173, 0.1604, 0.1857, 0.2723),
    "Floor3": (-0.0977, -0.0604, -0.0433, -0.0185, 0.1013, 0.1045, 0.1063, 0.1128),
}

ASX200_DOWNTURN = {
    "Original": (-0.1290, -0.1092, -0.0988, -0.0858, -0.0654, -0.0248, 0.0076, 0.0478),
    "Buffer1": (-0.0895, -0.0796, -0.0744, -0.0679, -0.0577, -0.0248, 0.0076, 0.0478),
    "Buffer2": (-0.0737, -0.0678, -0.0646, -0.0607, -0.0546, -0.0248, 0.0076, 0.0478),
    "Buffer3": (-0.1087, -0.1028, -0.0988, -0.0858, -0.0654, -0.0248, 0.0076, 0.0478),
    "Floor1": (-0.0790, -0.0592, -0.0494, -0.0429, -0.0327, -0.0124, 0.0076, 0.0478),
    "Floor2": (-0.0590, -0.0392, -0.0297, -0.0257, -0.0196, -0.0074, 0.0076, 0.0478),
    "Floor3": (-0.0387, -0.0328, -0.0296, -0.0257, -0.0196, -0.0074, 0.0076, 0.0478),
}

ASX200_FULL = {
    "Original": (-0.1290, -0.0939, -0.0804, -0.0386, 0.0630, 0.2239, 0.2690, 0.4912),
    "Buffer1": (-0.0895, -0.0719, -0.0652, -0.0386, 0.0548, 0.1144, 0.1310, 0.2132),
    "Buffer2": (-0.0995, -0.0635, -0.0593, -0.0418, 0.0165, 0.0475, 0.0837, 0.0999),
    "Buffer3": (-0.1087, -0.0939, -0.0804, -0.0386, 0.0509, 0.0730, 0.0915, 0.0999),
    "Floor1": (-0.0790, -0.0469, -0.0402, -0.0193, 0.0630, 0.1595, 0.1811, 0.2877),
    "Floor2": (-0.0590, -0.0282, -0.0241, -0.0116, 0.0630, 0.1335, 0.1456, 0.2056),
    "Floor3": (-0.0387, -0.0282, -0.0241, -0.0116, 0.0630, 0.1025, 0.1034, 0.1078),
}
