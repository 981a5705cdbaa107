use std::cmp::Ordering;
use std::fmt;

/// At most 16 letters (4 bits each) and words of length at most 16.
pub const MAX_LETTERS: usize = 16;
pub const MAX_LEN: usize = 16;

/// A word in the generators, packed base 16 with the first letter most significant.
///
/// The derived order compares length first and then lexicographically, which is the order used to
/// pick leading words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    code: u64,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters().iter().map(|l| l.to_string()).collect();
        write!(f, "w[{}]", s.join(","))
    }
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, code: 0 };

    pub fn letter(l: u8) -> Word {
        debug_assert!((l as usize) < MAX_LETTERS);
        Word { len: 1, code: l as u64 }
    }

    pub fn from_letters(ls: &[u8]) -> Word {
        assert!(ls.len() <= MAX_LEN, "word longer than {MAX_LEN}");
        let mut code = 0u64;
        for &l in ls {
            code = (code << 4) | l as u64;
        }
        Word { len: ls.len() as u8, code }
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, i: usize) -> u8 {
        ((self.code >> (4 * (self.len as usize - 1 - i))) & 0xf) as u8
    }

    pub fn first(self) -> u8 {
        self.get(0)
    }

    pub fn letters(self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn concat(self, other: Word) -> Word {
        assert!(self.len() + other.len() <= MAX_LEN, "word longer than {MAX_LEN}");
        let code = if other.len == 0 { self.code } else { (self.code << (4 * other.len as u32)) | other.code };
        Word { len: self.len + other.len, code }
    }

    /// Letters `[from, to)`.
    pub fn slice(self, from: usize, to: usize) -> Word {
        let len = to - from;
        let shifted = self.code >> (4 * (self.len() - to));
        let mask = if len == 16 { u64::MAX } else { (1u64 << (4 * len)) - 1 };
        Word { len: len as u8, code: shifted & mask }
    }

    /// Plain lexicographic order, a proper prefix being smaller.
    pub fn lex_cmp(self, other: Word) -> Ordering {
        let n = self.len().min(other.len());
        let a = self.slice(0, n).code;
        let b = other.slice(0, n).code;
        a.cmp(&b).then(self.len.cmp(&other.len))
    }

    pub fn is_lyndon(self) -> bool {
        if self.is_empty() {
            return false;
        }
        (1..self.len()).all(|i| self.lex_cmp(self.slice(i, self.len())) == Ordering::Less)
    }

    /// Standard factorization `w = u·v` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(self) -> Option<(Word, Word)> {
        if self.len() < 2 {
            return None;
        }
        (1..self.len())
            .find(|&i| self.slice(i, self.len()).is_lyndon())
            .map(|i| (self.slice(0, i), self.slice(i, self.len())))
    }

    /// Number of odd letters, given odd-letter flags.
    pub fn odd_count(self, odd: &[bool]) -> usize {
        (0..self.len()).filter(|&i| odd[self.get(i) as usize]).count()
    }
}

/// All Lyndon words of length exactly `k` over `n` letters, in lexicographic order (Duval).
pub fn lyndon_words(n: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        if w.len() == k {
            out.push(Word::from_letters(&w));
        }
        let m = w.len();
        while w.len() < k {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}
