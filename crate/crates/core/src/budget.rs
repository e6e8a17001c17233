/// Limits on exhaustive searches. Exceeding any of them is a [`crate::Error::Resource`],
/// never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget {
    /// Maximum number of candidate maps or structures enumerated by one operation.
    pub enumeration: u64,
    /// Maximum number of one-dimensional candidate values for the exponentiability test.
    pub value_cap: usize,
    /// Maximum number of summands in a covering family.
    pub cover_family: usize,
    /// Maximum number of candidate cover pieces examined per covered map.
    pub cover_search: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { enumeration: 1_000_000, value_cap: 10_000, cover_family: 4, cover_search: 1_000_000 }
    }
}

impl Budget {
    pub(crate) fn check_enumeration(&self, what: &str, count: Option<u64>) -> crate::Result<u64> {
        match count {
            Some(c) if c <= self.enumeration => Ok(c),
            Some(c) => Err(crate::Error::Resource(format!(
                "{what}: {c} candidates exceed the enumeration budget {}",
                self.enumeration
            ))),
            None => Err(crate::Error::Resource(format!("{what}: candidate count overflows"))),
        }
    }
}
