//! Dictionary tone and uncertainty indices, sentence-label tone and
//! inter-coder agreement.

pub mod agreement;
pub mod indices;
pub mod lexicon;

pub use agreement::{coincidence_matrix, krippendorff_alpha, read_labels, LabelMatrix};
pub use indices::{
    group_by_quarter, label_tone_index, load_corpus, quarter_start, read_corpus, rescale_to_base, tone_index,
    uncertainty_index, Document, SentenceLabel, TermCounts, UncertaintyRow,
};
pub use lexicon::{tokenize, Category, Lexicon};
