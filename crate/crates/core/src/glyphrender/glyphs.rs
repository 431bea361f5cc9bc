//! Base glyph artwork: 26 lowercase letters on an 8-row grid.
//!
//! Row zones: rows 0-1 ascenders, rows 2-6 x-height, row 7 descenders.
//! Widths vary per letter. All built-in fonts derive from this one set by
//! width scaling, stroke dilation and shear, and every derived size 8..=16
//! only ever upscales rows, so letters keep their distinguishing features.

pub const BASE_HEIGHT: usize = 8;

/// `(char, rows)` with `#` for ink. Every row of a glyph has equal width.
pub const BASE_GLYPHS: [(char, [&str; 8]); 26] = [
    ('a', [
        ".....",
        ".....",
        ".###.",
        "....#",
        ".####",
        "#...#",
        ".####",
        ".....",
    ]),
    ('b', [
        "#....",
        "#....",
        "####.",
        "#...#",
        "#...#",
        "#...#",
        "####.",
        ".....",
    ]),
    ('c', [
        "....",
        "....",
        ".###",
        "#...",
        "#...",
        "#...",
        ".###",
        "....",
    ]),
    ('d', [
        "....#",
        "....#",
        ".####",
        "#...#",
        "#...#",
        "#...#",
        ".####",
        ".....",
    ]),
    ('e', [
        ".....",
        ".....",
        ".###.",
        "#...#",
        "#####",
        "#....",
        ".###.",
        ".....",
    ]),
    ('f', [
        "..##",
        ".#..",
        "####",
        ".#..",
        ".#..",
        ".#..",
        ".#..",
        "....",
    ]),
    ('g', [
        ".....",
        ".....",
        ".####",
        "#...#",
        "#...#",
        ".####",
        "....#",
        ".###.",
    ]),
    ('h', [
        "#....",
        "#....",
        "####.",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        ".....",
    ]),
    ('i', [
        ".",
        "#",
        ".",
        "#",
        "#",
        "#",
        "#",
        ".",
    ]),
    ('j', [
        "...",
        "..#",
        "...",
        "..#",
        "..#",
        "..#",
        "..#",
        ".##",
    ]),
    ('k', [
        "#....",
        "#....",
        "#..#.",
        "#.#..",
        "##...",
        "#.#..",
        "#..#.",
        ".....",
    ]),
    ('l', [
        "#",
        "#",
        "#",
        "#",
        "#",
        "#",
        "#",
        ".",
    ]),
    ('m', [
        ".......",
        ".......",
        "#######",
        "#..#..#",
        "#..#..#",
        "#..#..#",
        "#..#..#",
        ".......",
    ]),
    ('n', [
        ".....",
        ".....",
        "####.",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        ".....",
    ]),
    ('o', [
        ".....",
        ".....",
        ".###.",
        "#...#",
        "#...#",
        "#...#",
        ".###.",
        ".....",
    ]),
    ('p', [
        ".....",
        ".....",
        "####.",
        "#...#",
        "#...#",
        "####.",
        "#....",
        "#....",
    ]),
    ('q', [
        ".....",
        ".....",
        ".####",
        "#...#",
        "#...#",
        ".####",
        "....#",
        "....#",
    ]),
    ('r', [
        "....",
        "....",
        "#.##",
        "##..",
        "#...",
        "#...",
        "#...",
        "....",
    ]),
    ('s', [
        "....",
        "....",
        ".###",
        "#...",
        ".##.",
        "...#",
        "###.",
        "....",
    ]),
    ('t', [
        ".#..",
        ".#..",
        "####",
        ".#..",
        ".#..",
        ".#..",
        "..##",
        "....",
    ]),
    ('u', [
        ".....",
        ".....",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        ".####",
        ".....",
    ]),
    ('v', [
        ".....",
        ".....",
        "#...#",
        "#...#",
        "#...#",
        ".#.#.",
        "..#..",
        ".....",
    ]),
    ('w', [
        ".......",
        ".......",
        "#..#..#",
        "#..#..#",
        "#..#..#",
        "#..#..#",
        "#######",
        ".......",
    ]),
    ('x', [
        ".....",
        ".....",
        "#...#",
        ".#.#.",
        "..#..",
        ".#.#.",
        "#...#",
        ".....",
    ]),
    ('y', [
        ".....",
        ".....",
        "#...#",
        "#...#",
        "#...#",
        ".####",
        "....#",
        ".###.",
    ]),
    ('z', [
        ".....",
        ".....",
        "#####",
        "...#.",
        "..#..",
        ".#...",
        "#####",
        ".....",
    ]),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artwork_is_well_formed() {
        for (c, rows) in BASE_GLYPHS {
            let w = rows[0].len();
            assert!(w >= 1, "{c}: zero width");
            for row in rows {
                assert_eq!(row.len(), w, "{c}: ragged rows");
                assert!(row.chars().all(|p| p == '.' || p == '#'), "{c}: bad cell");
            }
            assert!(
                rows.iter().any(|r| r.contains('#')),
                "{c}: no ink at all"
            );
        }
    }

    #[test]
    fn covers_the_alphabet_once() {
        let mut chars: Vec<char> = BASE_GLYPHS.iter().map(|(c, _)| *c).collect();
        chars.sort_unstable();
        let expected: Vec<char> = ('a'..='z').collect();
        assert_eq!(chars, expected);
    }

    #[test]
    fn base_artwork_pairwise_distinct() {
        for (i, (ca, a)) in BASE_GLYPHS.iter().enumerate() {
            for (cb, b) in BASE_GLYPHS.iter().skip(i + 1) {
                assert!(a != b, "{ca} and {cb} share artwork");
            }
        }
    }
}
