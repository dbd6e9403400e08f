//! JSON automaton format.
//!
//! A DFA serializes to a single object with the keys, in this order:
//! `"alphabet"` (string of letters in order), `"states"` (integer),
//! `"start"` (integer), `"finals"` (sorted integer array) and `"delta"`
//! (array of length `states`; entry `q` maps each letter to the successor
//! of `q`, keys in alphabet order). The output is deterministic byte for
//! byte.
//!
//! NFAs use the same layout with an additional `"starts"` array, delta
//! values that are sorted state arrays, and `""` as the epsilon label key.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::Nfa;

struct DfaRow<'a> {
    dfa: &'a Dfa,
    state: usize,
}

impl Serialize for DfaRow<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let alphabet = self.dfa.alphabet();
        let mut map = serializer.serialize_map(Some(alphabet.len()))?;
        for (j, &c) in alphabet.letters().iter().enumerate() {
            map.serialize_entry(&c, &self.dfa.step_idx(self.state, j))?;
        }
        map.end()
    }
}

impl Serialize for Dfa {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Dfa", 5)?;
        s.serialize_field("alphabet", &self.alphabet().as_str())?;
        s.serialize_field("states", &self.state_count())?;
        s.serialize_field("start", &self.start())?;
        s.serialize_field("finals", &self.finals().iter().collect::<Vec<_>>())?;
        let rows: Vec<DfaRow> = (0..self.state_count())
            .map(|state| DfaRow { dfa: self, state })
            .collect();
        s.serialize_field("delta", &rows)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct DfaDoc {
    alphabet: String,
    states: usize,
    start: usize,
    finals: Vec<usize>,
    delta: Vec<std::collections::BTreeMap<char, usize>>,
}

impl<'de> Deserialize<'de> for Dfa {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = DfaDoc::deserialize(deserializer)?;
        dfa_from_doc(doc).map_err(serde::de::Error::custom)
    }
}

fn dfa_from_doc(doc: DfaDoc) -> Result<Dfa> {
    let alphabet = Alphabet::new(&doc.alphabet)?;
    if doc.delta.len() != doc.states {
        return Err(Error::InvalidAutomaton(format!(
            "delta has {} rows, expected {}",
            doc.delta.len(),
            doc.states
        )));
    }
    let mut delta = Vec::with_capacity(doc.states);
    for (q, row) in doc.delta.iter().enumerate() {
        let mut out = Vec::with_capacity(alphabet.len());
        for &c in alphabet.letters() {
            match row.get(&c) {
                Some(&t) => out.push(t),
                None => {
                    return Err(Error::InvalidAutomaton(format!(
                        "state {q} has no transition on '{c}'"
                    )))
                }
            }
        }
        if row.len() != alphabet.len() {
            return Err(Error::InvalidAutomaton(format!(
                "state {q} has transitions on letters outside the alphabet"
            )));
        }
        delta.push(out);
    }
    Dfa::new(alphabet, doc.start, doc.finals, delta)
}

struct NfaRow<'a> {
    nfa: &'a Nfa,
    state: usize,
}

impl Serialize for NfaRow<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let alphabet = self.nfa.alphabet();
        let eps = self.nfa.epsilon_transitions(self.state);
        let nonempty: Vec<(usize, &char)> = alphabet
            .letters()
            .iter()
            .enumerate()
            .filter(|(j, _)| !self.nfa.transitions(self.state, *j).is_empty())
            .collect();
        let entries = nonempty.len() + usize::from(!eps.is_empty());
        let mut map = serializer.serialize_map(Some(entries))?;
        if !eps.is_empty() {
            map.serialize_entry("", &eps.iter().collect::<Vec<_>>())?;
        }
        for (j, c) in nonempty {
            map.serialize_entry(
                c,
                &self.nfa.transitions(self.state, j).iter().collect::<Vec<_>>(),
            )?;
        }
        map.end()
    }
}

impl Serialize for Nfa {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Nfa", 5)?;
        s.serialize_field("alphabet", &self.alphabet().as_str())?;
        s.serialize_field("states", &self.state_count())?;
        s.serialize_field("starts", &self.starts().iter().collect::<Vec<_>>())?;
        s.serialize_field("finals", &self.finals().iter().collect::<Vec<_>>())?;
        let rows: Vec<NfaRow> = (0..self.state_count())
            .map(|state| NfaRow { nfa: self, state })
            .collect();
        s.serialize_field("delta", &rows)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct NfaDoc {
    alphabet: String,
    states: usize,
    starts: Vec<usize>,
    finals: Vec<usize>,
    delta: Vec<std::collections::BTreeMap<String, Vec<usize>>>,
}

impl<'de> Deserialize<'de> for Nfa {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = NfaDoc::deserialize(deserializer)?;
        nfa_from_doc(doc).map_err(serde::de::Error::custom)
    }
}

fn nfa_from_doc(doc: NfaDoc) -> Result<Nfa> {
    let alphabet = Alphabet::new(&doc.alphabet)?;
    if doc.delta.len() != doc.states {
        return Err(Error::InvalidAutomaton(format!(
            "delta has {} rows, expected {}",
            doc.delta.len(),
            doc.states
        )));
    }
    let mut nfa = Nfa::empty(alphabet.clone(), doc.states);
    let check = |q: usize| -> Result<usize> {
        if q < doc.states {
            Ok(q)
        } else {
            Err(Error::InvalidAutomaton(format!(
                "state {q} out of range (states: {})",
                doc.states
            )))
        }
    };
    for &s in &doc.starts {
        nfa.add_start(check(s)?);
    }
    for &f in &doc.finals {
        nfa.add_final(check(f)?);
    }
    for (q, row) in doc.delta.iter().enumerate() {
        for (label, targets) in row {
            if label.is_empty() {
                for &t in targets {
                    nfa.add_epsilon(q, check(t)?);
                }
            } else {
                let mut chars = label.chars();
                let c = chars.next().expect("nonempty label");
                if chars.next().is_some() {
                    return Err(Error::InvalidAutomaton(format!(
                        "label {label:?} is not a single letter"
                    )));
                }
                let j = alphabet.require(c)?;
                for &t in targets {
                    nfa.add_edge(q, j, check(t)?);
                }
            }
        }
    }
    Ok(nfa)
}

/// Serializes a DFA to its compact canonical JSON line.
pub fn dfa_to_json(d: &Dfa) -> String {
    serde_json::to_string(d).expect("serialization cannot fail")
}

/// Parses a DFA from JSON, validating completeness and index ranges.
pub fn dfa_from_json(src: &str) -> Result<Dfa> {
    serde_json::from_str(src).map_err(|e| Error::InvalidAutomaton(e.to_string()))
}

/// Serializes an NFA to its compact canonical JSON line.
pub fn nfa_to_json(n: &Nfa) -> String {
    serde_json::to_string(n).expect("serialization cannot fail")
}

/// Parses an NFA from JSON.
pub fn nfa_from_json(src: &str) -> Result<Nfa> {
    serde_json::from_str(src).map_err(|e| Error::InvalidAutomaton(e.to_string()))
}
