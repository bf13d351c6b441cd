//! Golden lists for the worked groupoid examples: the rank-3 example's
//! roots, support vertices and Shapovalov factors for both parameter
//! values, and the rank-2 example's factor list. Constants are recorded
//! as zeta_6 exponents.

pub const EX2_ROOTS: [[i64; 3]; 26] = [
    [1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [1, 1, 0], [0, -1, 0],
    [0, 2, 1], [0, 1, 1], [0, 0, -1], [-1, -1, 0], [2, 2, 1], [1, 1, 1],
    [0, -2, -1], [1, 2, 2], [0, -1, -1], [-2, -2, -1], [-1, -1, -1], [1, 2, 1],
    [1, 3, 2], [-1, -2, -2], [2, 3, 2], [-1, -2, -1], [-1, -3, -2], [2, 4, 3],
    [-2, -3, -2], [-2, -4, -3],
];

pub const EX2_B_A3: [[i64; 3]; 96] = [
    [0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 1], [4, 2, 0], [2, 0, 1],
    [2, 4, 0], [0, 4, 1], [0, 5, 6], [4, 4, 0], [6, 4, 1], [7, 5, 6],
    [2, 6, 1], [0, 9, 6], [2, 9, 10], [0, 7, 7], [6, 6, 1], [11, 9, 6],
    [9, 9, 10], [9, 7, 7], [7, 16, 6], [2, 15, 10], [0, 9, 7], [7, 14, 15],
    [2, 11, 11], [11, 16, 6], [15, 15, 10], [11, 9, 7], [9, 14, 15], [11, 11, 11],
    [9, 22, 10], [9, 18, 7], [7, 25, 15], [2, 15, 11], [9, 18, 18], [4, 17, 15],
    [15, 22, 10], [11, 18, 7], [20, 25, 15], [15, 15, 11], [11, 18, 18], [15, 17, 15],
    [9, 27, 15], [11, 24, 11], [9, 29, 18], [4, 19, 15], [11, 24, 22], [6, 21, 18],
    [20, 27, 15], [15, 24, 11], [22, 29, 18], [17, 19, 15], [15, 24, 22], [17, 21, 18],
    [11, 31, 18], [15, 30, 15], [11, 33, 22], [6, 23, 18], [15, 30, 26], [11, 26, 23],
    [22, 31, 18], [17, 30, 15], [24, 33, 22], [19, 23, 18], [17, 30, 26], [17, 26, 23],
    [15, 37, 22], [17, 34, 18], [15, 39, 26], [11, 33, 23], [15, 32, 27], [24, 37, 22],
    [19, 34, 18], [26, 39, 26], [24, 33, 23], [19, 32, 27], [17, 41, 26], [17, 39, 23],
    [15, 39, 27], [20, 42, 32], [26, 41, 26], [24, 39, 23], [26, 39, 27], [24, 42, 32],
    [19, 43, 27], [20, 44, 32], [22, 44, 33], [26, 43, 27], [26, 44, 32], [24, 44, 33],
    [24, 48, 32], [22, 46, 33], [26, 48, 32], [26, 46, 33], [24, 48, 33], [26, 48, 33],
];

pub const EX2_B_A6: [[i64; 3]; 96] = [
    [0, 0, 0], [5, 0, 0], [0, 5, 0], [0, 0, 1], [10, 5, 0], [5, 0, 1],
    [5, 10, 0], [0, 7, 1], [0, 2, 3], [10, 10, 0], [12, 7, 1], [7, 2, 3],
    [5, 12, 1], [0, 9, 3], [5, 12, 13], [0, 4, 4], [12, 12, 1], [14, 9, 3],
    [12, 12, 13], [9, 4, 4], [7, 16, 3], [5, 24, 13], [0, 9, 4], [7, 14, 15],
    [5, 14, 14], [14, 16, 3], [24, 24, 13], [14, 9, 4], [12, 14, 15], [14, 14, 14],
    [12, 31, 13], [9, 18, 4], [7, 28, 15], [5, 24, 14], [9, 18, 18], [10, 29, 24],
    [24, 31, 13], [14, 18, 4], [26, 28, 15], [24, 24, 14], [14, 18, 18], [24, 29, 24],
    [12, 33, 15], [14, 33, 14], [9, 32, 18], [10, 34, 24], [14, 33, 28], [12, 33, 27],
    [26, 33, 15], [24, 33, 14], [28, 32, 18], [29, 34, 24], [24, 33, 28], [26, 33, 27],
    [14, 37, 18], [24, 48, 24], [14, 42, 28], [12, 38, 27], [24, 48, 38], [14, 35, 29],
    [28, 37, 18], [29, 48, 24], [33, 42, 28], [31, 38, 27], [29, 48, 38], [26, 35, 29],
    [24, 52, 28], [26, 52, 27], [24, 57, 38], [14, 42, 29], [24, 50, 39], [33, 52, 28],
    [31, 52, 27], [38, 57, 38], [33, 42, 29], [31, 50, 39], [29, 62, 38], [26, 54, 29],
    [24, 57, 39], [26, 54, 41], [38, 62, 38], [33, 54, 29], [38, 57, 39], [33, 54, 41],
    [31, 64, 39], [26, 59, 41], [28, 56, 42], [38, 64, 39], [38, 59, 41], [33, 56, 42],
    [33, 66, 41], [28, 61, 42], [38, 66, 41], [38, 61, 42], [33, 66, 42], [38, 66, 42],
];

pub const EX2_P_A3: [([i64; 3], i64); 31] = [
    ([1, 0, 0], 0), ([1, 0, 0], 4), ([0, 1, 0], 0), ([0, 1, 0], 4),
    ([0, 0, 1], 0), ([1, 1, 0], 2), ([1, 1, 0], 0), ([0, 2, 1], 4),
    ([0, 1, 1], 4), ([0, 1, 1], 3), ([0, 1, 1], 2), ([0, 1, 1], 1),
    ([0, 1, 1], 0), ([2, 2, 1], 2), ([1, 1, 1], 0), ([1, 1, 1], 5),
    ([1, 1, 1], 4), ([1, 1, 1], 3), ([1, 1, 1], 2), ([1, 2, 2], 4),
    ([1, 2, 2], 2), ([1, 2, 1], 2), ([1, 2, 1], 1), ([1, 2, 1], 0),
    ([1, 2, 1], 5), ([1, 2, 1], 4), ([1, 3, 2], 0), ([1, 3, 2], 4),
    ([2, 3, 2], 2), ([2, 3, 2], 0), ([2, 4, 3], 0),
];

pub const EX2_P_A6: [([i64; 3], i64); 40] = [
    ([1, 0, 0], 0), ([1, 0, 0], 5), ([1, 0, 0], 4), ([1, 0, 0], 3),
    ([1, 0, 0], 2), ([0, 1, 0], 0), ([0, 1, 0], 5), ([0, 1, 0], 4),
    ([0, 1, 0], 3), ([0, 1, 0], 2), ([0, 0, 1], 0), ([1, 1, 0], 1),
    ([1, 1, 0], 0), ([1, 1, 0], 5), ([1, 1, 0], 4), ([1, 1, 0], 3),
    ([0, 2, 1], 2), ([0, 1, 1], 2), ([0, 1, 1], 0), ([2, 2, 1], 4),
    ([1, 1, 1], 3), ([1, 1, 1], 1), ([1, 2, 2], 2), ([1, 2, 2], 1),
    ([1, 2, 2], 0), ([1, 2, 2], 5), ([1, 2, 2], 4), ([1, 2, 1], 4),
    ([1, 2, 1], 2), ([1, 3, 2], 3), ([1, 3, 2], 2), ([1, 3, 2], 1),
    ([1, 3, 2], 0), ([1, 3, 2], 5), ([2, 3, 2], 4), ([2, 3, 2], 3),
    ([2, 3, 2], 2), ([2, 3, 2], 1), ([2, 3, 2], 0), ([2, 4, 3], 0),
];

pub const EX1_P: [([i64; 2], i64); 6] = [
    ([1, 0], 0), ([1, 0], 4), ([0, 1], 0), ([2, 1], 4), ([1, 1], 1), ([1, 1], 3),
];
