#![allow(dead_code)]

pub mod fixtures;
pub mod lexicon_oracle;
pub mod mock_adapter;
