//! Multilingual information extraction: byte n-gram language and encoding
//! identification, gazetteer-based place tagging with country
//! disambiguation, date recognition and normalization, and SVG world maps
//! of country mention frequencies.

pub mod dates;
pub mod gazetteer;
pub mod geotag;
pub mod langid;
pub mod mapviz;
pub mod text;
