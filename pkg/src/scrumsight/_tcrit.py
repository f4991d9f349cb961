"""Two-tailed Student-t critical values for significance thresholds 0.05 and 0.01."""

# (critical value at alpha=0.05, critical value at alpha=0.01), indexed by df = 1..200.
T_CRITICAL: dict[int, tuple[float, float]] = {
    1: (12.706205, 63.656741),
    2: (4.302653, 9.924843),
    3: (3.182446, 5.840909),
    4: (2.776445, 4.604095),
    5: (2.570582, 4.032143),
    6: (2.446912, 3.707428),
    7: (2.364624, 3.499483),
    8: (2.306004, 3.355387),
    9: (2.262157, 3.249836),
    10: (2.228139, 3.169273),
    11: (2.200985, 3.105807),
    12: (2.178813, 3.054540),
    13: (2.160369, 3.012276),
    14: (2.144787, 2.976843),
    15: (2.131450, 2.946713),
    16: (2.119905, 2.920782),
    17: (2.109816, 2.898231),
    18: (2.100922, 2.878440),
    19: (2.093024, 2.860935),
    20: (2.085963, 2.845340),
    21: (2.079614, 2.831360),
    22: (2.073873, 2.818756),
    23: (2.068658, 2.807336),
    24: (2.063899, 2.796940),
    25: (2.059539, 2.787436),
    26: (2.055529, 2.778715),
    27: (2.051831, 2.770683),
    28: (2.048407, 2.763262),
    29: (2.045230, 2.756386),
    30: (2.042272, 2.749996),
    31: (2.039513, 2.744042),
    32: (2.036933, 2.738481),
    33: (2.034515, 2.733277),
    34: (2.032245, 2.728394),
    35: (2.030108, 2.723806),
    36: (2.028094, 2.719485),
    37: (2.026192, 2.715409),
    38: (2.024394, 2.711558),
    39: (2.022691, 2.707913),
    40: (2.021075, 2.704459),
    41: (2.019541, 2.701181),
    42: (2.018082, 2.698066),
    43: (2.016692, 2.695102),
    44: (2.015368, 2.692278),
    45: (2.014103, 2.689585),
    46: (2.012896, 2.687013),
    47: (2.011741, 2.684556),
    48: (2.010635, 2.682204),
    49: (2.009575, 2.679952),
    50: (2.008559, 2.677793),
    51: (2.007584, 2.675722),
    52: (2.006647, 2.673734),
    53: (2.005746, 2.671823),
    54: (2.004879, 2.669985),
    55: (2.004045, 2.668216),
    56: (2.003241, 2.666512),
    57: (2.002465, 2.664870),
    58: (2.001717, 2.663287),
    59: (2.000995, 2.661759),
    60: (2.000298, 2.660283),
    61: (1.999624, 2.658857),
    62: (1.998972, 2.657479),
    63: (1.998341, 2.656145),
    64: (1.997730, 2.654854),
    65: (1.997138, 2.653604),
    66: (1.996564, 2.652394),
    67: (1.996008, 2.651220),
    68: (1.995469, 2.650081),
    69: (1.994945, 2.648977),
    70: (1.994437, 2.647905),
    71: (1.993943, 2.646863),
    72: (1.993464, 2.645852),
    73: (1.992997, 2.644869),
    74: (1.992543, 2.643913),
    75: (1.992102, 2.642983),
    76: (1.991673, 2.642078),
    77: (1.991254, 2.641198),
    78: (1.990847, 2.640340),
    79: (1.990450, 2.639505),
    80: (1.990063, 2.638691),
    81: (1.989686, 2.637897),
    82: (1.989319, 2.637123),
    83: (1.988960, 2.636369),
    84: (1.988610, 2.635632),
    85: (1.988268, 2.634914),
    86: (1.987934, 2.634212),
    87: (1.987608, 2.633527),
    88: (1.987290, 2.632858),
    89: (1.986979, 2.632204),
    90: (1.986675, 2.631565),
    91: (1.986377, 2.630940),
    92: (1.986086, 2.630330),
    93: (1.985802, 2.629732),
    94: (1.985523, 2.629148),
    95: (1.985251, 2.628576),
    96: (1.984984, 2.628016),
    97: (1.984723, 2.627468),
    98: (1.984467, 2.626931),
    99: (1.984217, 2.626405),
    100: (1.983972, 2.625891),
    101: (1.983731, 2.625386),
    102: (1.983495, 2.624891),
    103: (1.983264, 2.624407),
    104: (1.983038, 2.623932),
    105: (1.982815, 2.623465),
    106: (1.982597, 2.623008),
    107: (1.982383, 2.622560),
    108: (1.982173, 2.622120),
    109: (1.981967, 2.621688),
    110: (1.981765, 2.621265),
    111: (1.981567, 2.620849),
    112: (1.981372, 2.620440),
    113: (1.981180, 2.620039),
    114: (1.980992, 2.619645),
    115: (1.980808, 2.619258),
    116: (1.980626, 2.618878),
    117: (1.980448, 2.618504),
    118: (1.980272, 2.618137),
    119: (1.980100, 2.617776),
    120: (1.979930, 2.617421),
    121: (1.979764, 2.617072),
    122: (1.979600, 2.616729),
    123: (1.979439, 2.616392),
    124: (1.979280, 2.616060),
    125: (1.979124, 2.615733),
    126: (1.978971, 2.615412),
    127: (1.978820, 2.615096),
    128: (1.978671, 2.614785),
    129: (1.978524, 2.614479),
    130: (1.978380, 2.614177),
    131: (1.978239, 2.613880),
    132: (1.978099, 2.613588),
    133: (1.977961, 2.613300),
    134: (1.977826, 2.613017),
    135: (1.977692, 2.612738),
    136: (1.977561, 2.612463),
    137: (1.977431, 2.612192),
    138: (1.977304, 2.611925),
    139: (1.977178, 2.611662),
    140: (1.977054, 2.611403),
    141: (1.976931, 2.611147),
    142: (1.976811, 2.610895),
    143: (1.976692, 2.610647),
    144: (1.976575, 2.610402),
    145: (1.976460, 2.610161),
    146: (1.976346, 2.609923),
    147: (1.976233, 2.609688),
    148: (1.976122, 2.609456),
    149: (1.976013, 2.609228),
    150: (1.975905, 2.609003),
    151: (1.975799, 2.608780),
    152: (1.975694, 2.608561),
    153: (1.975590, 2.608344),
    154: (1.975488, 2.608131),
    155: (1.975387, 2.607920),
    156: (1.975288, 2.607712),
    157: (1.975189, 2.607506),
    158: (1.975092, 2.607304),
    159: (1.974996, 2.607103),
    160: (1.974902, 2.606906),
    161: (1.974808, 2.606711),
    162: (1.974716, 2.606518),
    163: (1.974625, 2.606328),
    164: (1.974535, 2.606140),
    165: (1.974446, 2.605954),
    166: (1.974358, 2.605770),
    167: (1.974271, 2.605589),
    168: (1.974185, 2.605410),
    169: (1.974100, 2.605233),
    170: (1.974017, 2.605058),
    171: (1.973934, 2.604886),
    172: (1.973852, 2.604715),
    173: (1.973771, 2.604546),
    174: (1.973691, 2.604379),
    175: (1.973612, 2.604215),
    176: (1.973534, 2.604052),
    177: (1.973457, 2.603891),
    178: (1.973381, 2.603731),
    179: (1.973305, 2.603574),
    180: (1.973231, 2.603418),
    181: (1.973157, 2.603264),
    182: (1.973084, 2.603112),
    183: (1.973012, 2.602961),
    184: (1.972941, 2.602813),
    185: (1.972870, 2.602665),
    186: (1.972800, 2.602520),
    187: (1.972731, 2.602376),
    188: (1.972663, 2.602233),
    189: (1.972595, 2.602092),
    190: (1.972528, 2.601952),
    191: (1.972462, 2.601814),
    192: (1.972396, 2.601678),
    193: (1.972332, 2.601543),
    194: (1.972268, 2.601409),
    195: (1.972204, 2.601276),
    196: (1.972141, 2.601145),
    197: (1.972079, 2.601016),
    198: (1.972017, 2.600887),
    199: (1.971957, 2.600760),
    200: (1.971896, 2.600634),
}

# normal-approximation limits used for df > 200
T_CRITICAL_ASYMPTOTIC: tuple[float, float] = (1.959964, 2.575829)
