"""Frozen values from tools/derive_oracles.py (sympy GF(p) arithmetic, brute-force cosets)."""

ORACLE = {'fields': {(5, 1): {'modulus': (0, 1), 'alpha': 2},
            (5, 2): {'modulus': (2, 0, 1), 'alpha': 6},
            (3, 2): {'modulus': (1, 0, 1), 'alpha': 4},
            (7, 2): {'modulus': (1, 0, 1), 'alpha': 9},
            (17, 2): {'modulus': (3, 0, 1), 'alpha': 19},
            (2, 3): {'modulus': (1, 1, 0, 1), 'alpha': 2},
            (3, 3): {'modulus': (1, 2, 0, 1), 'alpha': 3},
            (2, 4): {'modulus': (1, 1, 0, 0, 1), 'alpha': 2}},
 'f25_products': [(7, 13, 12), (24, 24, 14), (5, 5, 3), (11, 17, 10), (3, 20, 10)],
 'lrs_5_2_4_2_2': [[1, 5, 1, 5], [1, 20, 6, 22]],
 'lrs_5_2_4_2_3': [[1, 5, 1, 5], [1, 20, 6, 22], [1, 5, 3, 15]],
 'lrs_systematic_01': [[1, 0, 16, 1], [0, 1, 2, 16]],
 'lrs_systematic_23': [[24, 13, 1, 0], [21, 24, 0, 1]],
 'sum_rank_weights_k2': {0: 1, 3: 288, 4: 336},
 'hamming_weights_k2': {0: 1, 3: 96, 4: 528},
 'lattice': {('gaussian', (2, 1)): {'energy': 4,
                                    'ties': [],
                                    'reps': [(0, 0), (1, 0), (0, -1), (0, 1), (-1, 0)]},
             ('gaussian', (3, 2)): {'energy': 28,
                                    'ties': [],
                                    'reps': [(0, 0),
                                             (1, 0),
                                             (2, 0),
                                             (0, -2),
                                             (-1, 1),
                                             (0, 1),
                                             (1, 1),
                                             (-1, -1),
                                             (0, -1),
                                             (1, -1),
                                             (0, 2),
                                             (-2, 0),
                                             (-1, 0)]},
             ('gaussian', (4, 1)): {'energy': 48,
                                    'ties': [],
                                    'reps': [(0, 0),
                                             (1, 0),
                                             (2, 0),
                                             (-1, -1),
                                             (0, -1),
                                             (1, -1),
                                             (2, -1),
                                             (-1, -2),
                                             (0, -2),
                                             (0, 2),
                                             (1, 2),
                                             (-2, 1),
                                             (-1, 1),
                                             (0, 1),
                                             (1, 1),
                                             (-2, 0),
                                             (-1, 0)]},
             ('eisenstein', (3, 1)): {'energy': 6,
                                      'ties': [],
                                      'reps': [(0, 0),
                                               (1, 0),
                                               (-1, -1),
                                               (0, -1),
                                               (0, 1),
                                               (1, 1),
                                               (-1, 0)]},
             ('eisenstein', (4, 1)): {'energy': 24,
                                      'ties': [],
                                      'reps': [(0, 0),
                                               (1, 0),
                                               (-2, -1),
                                               (-1, -1),
                                               (0, -1),
                                               (1, -1),
                                               (1, 2),
                                               (-1, -2),
                                               (-1, 1),
                                               (0, 1),
                                               (1, 1),
                                               (2, 1),
                                               (-1, 0)]},
             ('eisenstein', (9, 19)): {'energy': 10170, 'ties': []}}}
