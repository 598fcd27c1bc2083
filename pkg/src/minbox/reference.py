"""Known optimal results for the benchmark families.

Each row: optimal box dimensions (all boxes of minimum area), the
published empty-space percentage (rounded to three significant figures),
and the published count of boxes tested, kept for informational diffs
only.  High-precision rows carry exact rational box dimensions plus the
scaling constant.
"""

from __future__ import annotations

from fractions import Fraction

# family -> n -> (boxes, empty_pct, boxes_tested)
CONSECUTIVE_SQUARES = {
    1: ([(1, 1)], "0.00", 1),
    2: ([(2, 3)], "16.7", 1),
    3: ([(3, 5)], "6.67", 1),
    4: ([(5, 7)], "14.3", 1),
    5: ([(5, 12)], "8.33", 1),
    6: ([(9, 11)], "8.08", 1),
    7: ([(11, 14), (7, 22)], "9.09", 3),
    8: ([(14, 15)], "2.86", 2),
    9: ([(15, 20)], "5.00", 4),
    10: ([(15, 27)], "4.94", 5),
    11: ([(19, 27)], "1.36", 3),
    12: ([(23, 29)], "2.55", 6),
    13: ([(22, 38)], "2.03", 5),
    14: ([(23, 45)], "1.93", 8),
    15: ([(23, 55)], "1.98", 13),
    16: ([(28, 54), (27, 56)], "1.06", 10),
    17: ([(39, 46)], "0.50", 5),
    18: ([(31, 69)], "1.40", 14),
    19: ([(47, 53)], "0.84", 12),
    20: ([(34, 85)], "0.69", 14),
    21: ([(38, 88)], "0.99", 20),
    22: ([(39, 98)], "0.71", 17),
    23: ([(64, 68)], "0.64", 19),
    24: ([(56, 88)], "0.58", 19),
    25: ([(43, 129)], "0.40", 17),
    26: ([(70, 89)], "0.47", 21),
    27: ([(47, 148), (74, 94)], "0.37", 22),
    28: ([(63, 123)], "0.45", 30),
    29: ([(81, 106)], "0.36", 27),
    30: ([(51, 186)], "0.33", 21),
    31: ([(91, 110)], "0.33", 30),
    32: ([(85, 135)], "0.31", 36),
}

UNORIENTED_CONSECUTIVE = {
    1: ([(1, 2)], "0.00", 1),
    2: ([(2, 4)], "0.00", 1),
    3: ([(4, 5)], "0.00", 1),
    4: ([(5, 8), (4, 10)], "0.00", 2),
    5: ([(5, 14)], "0.00", 2),
    6: ([(6, 19)], "1.75", 2),
    7: ([(12, 14)], "0.00", 2),
    8: ([(15, 16)], "0.00", 1),
    9: ([(16, 21), (14, 24)], "1.79", 5),
    10: ([(17, 26)], "0.45", 5),
    11: ([(22, 26)], "0.00", 2),
    12: ([(21, 35)], "0.95", 4),
    13: ([(26, 35)], "0.00", 1),
    14: ([(32, 35), (28, 40)], "0.00", 2),
    15: ([(34, 40)], "0.00", 1),
    16: ([(32, 51)], "0.00", 2),
    17: ([(34, 57)], "0.00", 2),
    18: ([(30, 76)], "0.00", 3),
    19: ([(35, 76), (38, 70)], "0.00", 2),
    20: ([(35, 88), (44, 70), (55, 56)], "0.00", 4),
    21: ([(39, 91)], "0.20", 2),
    22: ([(44, 92)], "0.00", 2),
    23: ([(40, 115), (46, 100)], "0.00", 3),
    24: ([(40, 130), (52, 100), (65, 80)], "0.00", 4),
    25: ([(45, 130), (65, 90), (75, 78)], "0.00", 5),
    26: ([(42, 156), (52, 126), (56, 117), (63, 104), (72, 91), (78, 84)], "0.00", 7),
    27: ([(63, 116)], "0.00", 3),
    28: ([(56, 145), (70, 116)], "0.00", 3),
    29: ([(62, 145)], "0.00", 2),
}

ORIENTED_EQUAL_PERIMETER = {
    1: ([(1, 1)], "0.00", 1),
    2: ([(2, 3)], "33.3", 1),
    3: ([(3, 4)], "16.7", 1),
    4: ([(4, 6)], "16.7", 1),
    5: ([(6, 7)], "16.7", 4),
    6: ([(6, 10)], "6.67", 2),
    7: ([(8, 11)], "4.55", 2),
    8: ([(8, 16)], "6.25", 5),
    9: ([(11, 16)], "6.25", 6),
    10: ([(11, 21)], "4.76", 8),
    11: ([(14, 21)], "2.72", 6),
    12: ([(13, 29)], "3.45", 7),
    13: ([(16, 29)], "1.94", 7),
    14: ([(19, 30), (15, 38)], "1.75", 7),
    15: ([(24, 29)], "2.30", 10),
    16: ([(23, 36)], "1.45", 9),
    17: ([(24, 41)], "1.52", 8),
    18: ([(24, 48)], "1.04", 12),
    19: ([(32, 42), (24, 56)], "1.04", 12),
    20: ([(37, 42)], "0.90", 11),
    21: ([(35, 51)], "0.78", 9),
    22: ([(34, 60)], "0.78", 15),
    23: ([(38, 61)], "0.78", 16),
}

UNORIENTED_DOUBLE_PERIMETER = {
    1: ([(1, 1)], "0.00", 1),
    2: ([(3, 3)], "22.2", 1),
    3: ([(3, 8)], "8.33", 2),
    4: ([(6, 9)], "7.41", 2),
    5: ([(6, 17)], "6.86", 8),
    6: ([(9, 19)], "5.85", 9),
    7: ([(13, 20)], "3.08", 11),
    8: ([(18, 21)], "1.59", 8),
    9: ([(13, 41)], "1.50", 13),
    10: ([(24, 30)], "0.69", 8),
    11: ([(29, 33)], "1.15", 12),
    12: ([(21, 59)], "1.37", 17),
    13: ([(38, 41)], "0.71", 13),
    14: ([(38, 51), (17, 114)], "0.67", 17),
    15: ([(44, 54)], "0.67", 21),
    16: ([(45, 64), (30, 96), (40, 72), (48, 60)], "0.83", 35),
    17: ([(39, 88), (52, 66)], "0.44", 27),
    18: ([(55, 74)], "0.57", 35),
}

# n -> (rational boxes (w, h), scale)
HIGH_PRECISION = {
    1: ([(Fraction(1, 2), Fraction(1))], 2),
    2: ([(Fraction(1, 2), Fraction(4, 3))], 6),
    3: ([(Fraction(1, 2), Fraction(19, 12))], 12),
    4: ([(Fraction(5, 6), Fraction(1)), (Fraction(1, 2), Fraction(5, 3))], 60),
    5: ([(Fraction(1, 2), Fraction(17, 10))], 60),
    6: ([(Fraction(1, 2), Fraction(107, 60))], 420),
    7: ([(Fraction(1, 2), Fraction(107, 60))], 840),
    8: ([(Fraction(1, 2), Fraction(163, 90))], 2520),
    9: ([(Fraction(1, 2), Fraction(163, 90))], 2520),
    10: ([(Fraction(1, 2), Fraction(1817, 990))], 27720),
    11: ([(Fraction(1, 2), Fraction(7367, 3960))], 27720),
    12: ([(Fraction(1, 2), Fraction(67, 36))], 360360),
    13: ([(Fraction(1, 2), Fraction(185, 99))], 360360),
    14: ([(Fraction(1, 2), Fraction(169, 90))], 360360),
    15: ([(Fraction(1, 2), Fraction(79, 42))], 720720),
}

TABLES = {
    "consecutive-squares": CONSECUTIVE_SQUARES,
    "unoriented-consecutive": UNORIENTED_CONSECUTIVE,
    "oriented-equal-perimeter": ORIENTED_EQUAL_PERIMETER,
    "unoriented-double-perimeter": UNORIENTED_DOUBLE_PERIMETER,
}
