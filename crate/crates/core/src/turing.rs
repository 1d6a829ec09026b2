//! Deterministic single-tape Turing machines.
//!
//! Semi-infinite tape, blank symbol 0, left moves at cell 0 stay at cell 0.
//! Configurations freeze once a halting state is reached: stepping past the
//! halting time returns the same configuration, so "the configuration after
//! d steps" is total in d.
//!
//! # Text format
//!
//! ```text
//! states 4
//! alphabet 3
//! start 0
//! accept 2
//! reject 3
//! # state symbol -> next write move
//! 0 0 2 0 R
//! 0 1 0 1 R
//! 0 2 1 2 R
//! 1 0 3 0 R
//! 1 1 1 1 R
//! 1 2 0 2 R
//! ```
//!
//! One transition row per (state, symbol) pair of every non-halting state;
//! `#` starts a comment. Moves are `L` or `R`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;

pub const BLANK: u8 = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("bad machine: {0}")]
    BadSpec(String),
    #[error("configuration is already halted")]
    AlreadyHalted,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad machine or configuration encoding: {0}")]
    Decode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Move {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub next: u16,
    pub write: u8,
    pub dir: Move,
}

/// A deterministic single-tape machine: total transition function on
/// non-halting states, distinguished accept and reject states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmSpec {
    state_count: u16,
    alphabet_size: u8,
    start: u16,
    accept: u16,
    reject: u16,
    /// Row-major: `state * alphabet_size + symbol`. Rows of halting states
    /// are present but never read.
    delta: Vec<Transition>,
}

impl TmSpec {
    pub fn new(
        state_count: u16,
        alphabet_size: u8,
        start: u16,
        accept: u16,
        reject: u16,
        delta: Vec<Transition>,
    ) -> Result<Self, TmError> {
        if alphabet_size == 0 {
            return Err(TmError::BadSpec("alphabet must contain the blank".into()));
        }
        if start >= state_count || accept >= state_count || reject >= state_count {
            return Err(TmError::BadSpec("state out of range".into()));
        }
        if accept == reject {
            return Err(TmError::BadSpec("accept and reject must differ".into()));
        }
        let expected = state_count as usize * alphabet_size as usize;
        if delta.len() != expected {
            return Err(TmError::BadSpec(format!(
                "transition table has {} rows, expected {expected}",
                delta.len()
            )));
        }
        for t in &delta {
            if t.next >= state_count || t.write >= alphabet_size {
                return Err(TmError::BadSpec("transition target out of range".into()));
            }
        }
        Ok(TmSpec {
            state_count,
            alphabet_size,
            start,
            accept,
            reject,
            delta,
        })
    }

    pub fn state_count(&self) -> u16 {
        self.state_count
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn start_state(&self) -> u16 {
        self.start
    }

    pub fn accept_state(&self) -> u16 {
        self.accept
    }

    pub fn reject_state(&self) -> u16 {
        self.reject
    }

    pub fn is_halting(&self, state: u16) -> bool {
        state == self.accept || state == self.reject
    }

    fn transition(&self, state: u16, symbol: u8) -> Transition {
        self.delta[state as usize * self.alphabet_size as usize + symbol as usize]
    }

    /// Start configuration on `input`.
    pub fn start_config(&self, input: &[u8]) -> Result<TmConfig, TmError> {
        if input.iter().any(|&s| s >= self.alphabet_size) {
            return Err(TmError::BadSpec("input symbol outside alphabet".into()));
        }
        Ok(TmConfig {
            state: self.start,
            head: 0,
            tape: input.to_vec(),
        })
    }

    /// Fixed-width bit encoding of the machine description.
    pub fn to_bits(&self) -> BitString {
        let mut out = BitString::new();
        out.push_value(self.state_count as u64, 16);
        out.push_value(self.alphabet_size as u64, 8);
        out.push_value(self.start as u64, 16);
        out.push_value(self.accept as u64, 16);
        out.push_value(self.reject as u64, 16);
        for t in &self.delta {
            out.push_value(t.next as u64, 16);
            out.push_value(t.write as u64, 8);
            out.push(t.dir == Move::Right);
        }
        out
    }

    /// Decodes a machine from `bits` starting at `pos`; returns the machine
    /// and the position past it.
    pub fn from_bits(bits: &BitString, pos: usize) -> Result<(Self, usize), TmError> {
        let mut cur = BitCursor { bits, pos };
        let state_count = cur.take(16)? as u16;
        let alphabet_size = cur.take(8)? as u8;
        let start = cur.take(16)? as u16;
        let accept = cur.take(16)? as u16;
        let reject = cur.take(16)? as u16;
        let rows = state_count as usize * alphabet_size as usize;
        let mut delta = Vec::with_capacity(rows);
        for _ in 0..rows {
            let next = cur.take(16)? as u16;
            let write = cur.take(8)? as u8;
            let dir = if cur.take(1)? == 1 {
                Move::Right
            } else {
                Move::Left
            };
            delta.push(Transition { next, write, dir });
        }
        let spec = TmSpec::new(state_count, alphabet_size, start, accept, reject, delta)
            .map_err(|e| TmError::Decode(e.to_string()))?;
        Ok((spec, cur.pos))
    }

    pub fn parse(text: &str) -> Result<Self, TmError> {
        let mut state_count = None;
        let mut alphabet = None;
        let mut start = None;
        let mut accept = None;
        let mut reject = None;
        let mut rows: Vec<(u16, u8, Transition)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err =
                |what: &str| TmError::Parse(format!("line {}: {what}", lineno + 1));
            match fields[0] {
                "states" | "alphabet" | "start" | "accept" | "reject" => {
                    if fields.len() != 2 {
                        return Err(parse_err("expected one value"));
                    }
                    let v: u64 = fields[1].parse().map_err(|_| parse_err("bad number"))?;
                    match fields[0] {
                        "states" => state_count = Some(v as u16),
                        "alphabet" => alphabet = Some(v as u8),
                        "start" => start = Some(v as u16),
                        "accept" => accept = Some(v as u16),
                        "reject" => reject = Some(v as u16),
                        _ => unreachable!(),
                    }
                }
                _ => {
                    if fields.len() != 5 {
                        return Err(parse_err("expected: state symbol next write move"));
                    }
                    let state: u16 = fields[0].parse().map_err(|_| parse_err("bad state"))?;
                    let symbol: u8 = fields[1].parse().map_err(|_| parse_err("bad symbol"))?;
                    let next: u16 = fields[2].parse().map_err(|_| parse_err("bad next"))?;
                    let write: u8 = fields[3].parse().map_err(|_| parse_err("bad write"))?;
                    let dir = match fields[4] {
                        "L" | "l" => Move::Left,
                        "R" | "r" => Move::Right,
                        _ => return Err(parse_err("move must be L or R")),
                    };
                    rows.push((state, symbol, Transition { next, write, dir }));
                }
            }
        }
        let state_count = state_count.ok_or_else(|| TmError::Parse("missing states".into()))?;
        let alphabet = alphabet.ok_or_else(|| TmError::Parse("missing alphabet".into()))?;
        let start = start.ok_or_else(|| TmError::Parse("missing start".into()))?;
        let accept = accept.ok_or_else(|| TmError::Parse("missing accept".into()))?;
        let reject = reject.ok_or_else(|| TmError::Parse("missing reject".into()))?;
        let mut delta = vec![
            Transition {
                next: reject,
                write: 0,
                dir: Move::Right
            };
            state_count as usize * alphabet as usize
        ];
        for (state, symbol, t) in rows {
            if state >= state_count || symbol >= alphabet {
                return Err(TmError::Parse(format!(
                    "transition for out-of-range pair ({state}, {symbol})"
                )));
            }
            delta[state as usize * alphabet as usize + symbol as usize] = t;
        }
        TmSpec::new(state_count, alphabet, start, accept, reject, delta)
    }
}

impl fmt::Display for TmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.state_count)?;
        writeln!(f, "alphabet {}", self.alphabet_size)?;
        writeln!(f, "start {}", self.start)?;
        writeln!(f, "accept {}", self.accept)?;
        writeln!(f, "reject {}", self.reject)?;
        for state in 0..self.state_count {
            if self.is_halting(state) {
                continue;
            }
            for symbol in 0..self.alphabet_size {
                let t = self.transition(state, symbol);
                writeln!(
                    f,
                    "{state} {symbol} {} {} {}",
                    t.next,
                    t.write,
                    match t.dir {
                        Move::Left => "L",
                        Move::Right => "R",
                    }
                )?;
            }
        }
        Ok(())
    }
}

/// A machine configuration: state, head position, and the written tape
/// window. The head may sit one past the window end (reads the blank).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TmConfig {
    pub state: u16,
    pub head: usize,
    pub tape: Vec<u8>,
}

impl TmConfig {
    pub fn is_halting(&self, tm: &TmSpec) -> bool {
        tm.is_halting(self.state)
    }

    pub fn is_accepting(&self, tm: &TmSpec) -> bool {
        self.state == tm.accept_state()
    }

    pub fn is_rejecting(&self, tm: &TmSpec) -> bool {
        self.state == tm.reject_state()
    }

    /// Fixed-layout bit encoding: state, head, and the length-prefixed
    /// tape window.
    pub fn to_bits(&self) -> BitString {
        let mut out = BitString::new();
        out.push_value(self.state as u64, 16);
        out.push_value(self.head as u64, 16);
        out.push_value(self.tape.len() as u64, 16);
        for &s in &self.tape {
            out.push_value(s as u64, 8);
        }
        out
    }

    pub fn from_bits(bits: &BitString, pos: usize) -> Result<(Self, usize), TmError> {
        let mut cur = BitCursor { bits, pos };
        let state = cur.take(16)? as u16;
        let head = cur.take(16)? as usize;
        let len = cur.take(16)? as usize;
        let mut tape = Vec::with_capacity(len);
        for _ in 0..len {
            tape.push(cur.take(8)? as u8);
        }
        Ok((TmConfig { state, head, tape }, cur.pos))
    }
}

/// Sequential bit reader used by the decoders.
pub(crate) struct BitCursor<'a> {
    pub bits: &'a BitString,
    pub pos: usize,
}

impl BitCursor<'_> {
    pub fn take(&mut self, width: usize) -> Result<u64, TmError> {
        let v = self
            .bits
            .read_value(self.pos, width)
            .ok_or_else(|| TmError::Decode("truncated encoding".into()))?;
        self.pos += width;
        Ok(v)
    }
}

/// One transition application. Errors on halted configurations; use
/// [`tm_advance`] for the frozen variant.
pub fn tm_step(tm: &TmSpec, conf: &TmConfig) -> Result<TmConfig, TmError> {
    if conf.is_halting(tm) {
        return Err(TmError::AlreadyHalted);
    }
    let symbol = conf.tape.get(conf.head).copied().unwrap_or(BLANK);
    let t = tm.transition(conf.state, symbol);
    let mut tape = conf.tape.clone();
    if conf.head == tape.len() {
        tape.push(BLANK);
    }
    tape[conf.head] = t.write;
    let head = match t.dir {
        Move::Left => conf.head.saturating_sub(1),
        Move::Right => conf.head + 1,
    };
    Ok(TmConfig {
        state: t.next,
        head,
        tape,
    })
}

/// One step with the frozen-halt convention: halted configurations map to
/// themselves.
pub fn tm_advance(tm: &TmSpec, conf: &TmConfig) -> TmConfig {
    if conf.is_halting(tm) {
        conf.clone()
    } else {
        tm_step(tm, conf).expect("non-halting configuration steps")
    }
}

/// The configuration after `d` steps from the start configuration on
/// `input`, frozen at the halting configuration.
pub fn tm_config_after(tm: &TmSpec, input: &[u8], d: u64) -> Result<TmConfig, TmError> {
    let mut conf = tm.start_config(input)?;
    for _ in 0..d {
        if conf.is_halting(tm) {
            break;
        }
        conf = tm_step(tm, &conf)?;
    }
    Ok(conf)
}

/// Least `d` such that the machine halts on `input` within `cap` steps, or
/// `None`.
pub fn tm_halt_time(tm: &TmSpec, input: &[u8], cap: u64) -> Result<Option<u64>, TmError> {
    let mut conf = tm.start_config(input)?;
    for d in 0..=cap {
        if conf.is_halting(tm) {
            return Ok(Some(d));
        }
        conf = tm_step(tm, &conf)?;
    }
    Ok(None)
}

/// Maps a 0/1 word to the tape symbols used by the bundled machines:
/// `'0' -> 1`, `'1' -> 2` (0 is the blank).
pub fn binary_input(word: &str) -> Result<Vec<u8>, TmError> {
    word.chars()
        .map(|c| match c {
            '0' => Ok(1),
            '1' => Ok(2),
            _ => Err(TmError::Parse(format!("bad input character {c:?}"))),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Bundled machines
// ---------------------------------------------------------------------------

/// Accepts iff the input contains an even number of `1`s. Halts after
/// scanning the input plus the terminating blank.
pub fn parity_machine() -> TmSpec {
    // States: 0 = even so far, 1 = odd so far, 2 = accept, 3 = reject.
    // Alphabet: 0 = blank, 1 = '0', 2 = '1'.
    let r = |next, write, dir| Transition { next, write, dir };
    TmSpec::new(
        4,
        3,
        0,
        2,
        3,
        vec![
            // state 0 (even)
            r(2, 0, Move::Right), // blank: accept
            r(0, 1, Move::Right), // '0': keep parity
            r(1, 2, Move::Right), // '1': flip parity
            // state 1 (odd)
            r(3, 0, Move::Right), // blank: reject
            r(1, 1, Move::Right),
            r(0, 2, Move::Right),
            // states 2, 3: halting, rows unused
            r(2, 0, Move::Right),
            r(2, 0, Move::Right),
            r(2, 0, Move::Right),
            r(3, 0, Move::Right),
            r(3, 0, Move::Right),
            r(3, 0, Move::Right),
        ],
    )
    .expect("parity machine is well formed")
}

/// Accepts iff the first input symbol is `1`. Halts in exactly one step.
pub fn first_symbol_machine() -> TmSpec {
    let r = |next, write, dir| Transition { next, write, dir };
    TmSpec::new(
        3,
        3,
        0,
        1,
        2,
        vec![
            // state 0
            r(2, 0, Move::Right), // blank: reject
            r(2, 1, Move::Right), // '0': reject
            r(1, 2, Move::Right), // '1': accept
            // halting rows
            r(1, 0, Move::Right),
            r(1, 0, Move::Right),
            r(1, 0, Move::Right),
            r(2, 0, Move::Right),
            r(2, 0, Move::Right),
            r(2, 0, Move::Right),
        ],
    )
    .expect("first-symbol machine is well formed")
}

/// Accepts iff the input contains a `0`; scans left to right. Halting time
/// depends on where the first `0` sits.
pub fn contains_zero_machine() -> TmSpec {
    let r = |next, write, dir| Transition { next, write, dir };
    TmSpec::new(
        3,
        3,
        0,
        1,
        2,
        vec![
            // state 0 (scanning)
            r(2, 0, Move::Right), // blank: reject
            r(1, 1, Move::Right), // '0': accept
            r(0, 2, Move::Right), // '1': keep scanning
            // halting rows
            r(1, 0, Move::Right),
            r(1, 0, Move::Right),
            r(1, 0, Move::Right),
            r(2, 0, Move::Right),
            r(2, 0, Move::Right),
            r(2, 0, Move::Right),
        ],
    )
    .expect("contains-zero machine is well formed")
}

/// The bundled machine zoo, by name.
pub fn bundled_machines() -> Vec<(&'static str, TmSpec)> {
    vec![
        ("parity", parity_machine()),
        ("first-symbol", first_symbol_machine()),
        ("contains-zero", contains_zero_machine()),
    ]
}
