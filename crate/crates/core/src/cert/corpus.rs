//! The built-in certificate corpus, stored as `.gadget` files.

use super::{parse_gadget, GadgetCase};

const FILES: &[(&str, &str)] = &[
    ("five-token.gadget", include_str!("../../corpus/five-token.gadget")),
    ("sparse8-vuvu.gadget", include_str!("../../corpus/sparse8-vuvu.gadget")),
    ("sparse8-vuwu.gadget", include_str!("../../corpus/sparse8-vuwu.gadget")),
    ("sparse8-vuwx.gadget", include_str!("../../corpus/sparse8-vuwx.gadget")),
    ("sparse8-vx.gadget", include_str!("../../corpus/sparse8-vx.gadget")),
    ("sparse8-wuwu.gadget", include_str!("../../corpus/sparse8-wuwu.gadget")),
    ("sparse8-wx.gadget", include_str!("../../corpus/sparse8-wx.gadget")),
    ("complete8-vuv.gadget", include_str!("../../corpus/complete8-vuv.gadget")),
    ("complete8-vuwx.gadget", include_str!("../../corpus/complete8-vuwx.gadget")),
    ("complete8-vx.gadget", include_str!("../../corpus/complete8-vx.gadget")),
    ("complete8-wx.gadget", include_str!("../../corpus/complete8-wx.gadget")),
    ("six-cd.gadget", include_str!("../../corpus/six-cd.gadget")),
    ("six-ab.gadget", include_str!("../../corpus/six-ab.gadget")),
    ("six-abcd.gadget", include_str!("../../corpus/six-abcd.gadget")),
    ("chord-both.gadget", include_str!("../../corpus/chord-both.gadget")),
    ("chord-one.gadget", include_str!("../../corpus/chord-one.gadget")),
    ("chord-neither.gadget", include_str!("../../corpus/chord-neither.gadget")),
    ("hub-v.gadget", include_str!("../../corpus/hub-v.gadget")),
    ("hub-x.gadget", include_str!("../../corpus/hub-x.gadget")),
    ("hub-other.gadget", include_str!("../../corpus/hub-other.gadget")),
    ("full7.gadget", include_str!("../../corpus/full7.gadget")),
    ("full10.gadget", include_str!("../../corpus/full10.gadget")),
];

/// Parses every built-in case. The files are compiled in, so a parse
/// failure is a build defect and panics.
pub fn builtin_corpus() -> Vec<GadgetCase> {
    FILES
        .iter()
        .map(|(file, text)| parse_gadget(text, file).unwrap_or_else(|e| panic!("{e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_22_cases() {
        assert_eq!(builtin_corpus().len(), 22);
    }

    #[test]
    fn emit_then_load_is_identity() {
        for c in builtin_corpus() {
            assert_eq!(parse_gadget(&c.to_gadget_string(), &c.name).unwrap(), c);
        }
    }
}
