//! File formats and rendering.

mod genome_text;
mod image;
mod map_text;
mod mask;
mod results;

pub use self::image::{
    render_class_grid, render_image, RenderStyle, Rgb, CORRIDOR_BLUE, EMPTY_WHITE,
    FORBIDDEN_LIGHT_BLUE, OUTLINE_BLACK, ROOM_GREY, START_RED,
};
pub use genome_text::{parse_genome, serialize_genome};
pub use map_text::{parse_map_text, render_classes, render_text, CellClass, ClassGrid};
pub use mask::{parse_mask, serialize_mask};
pub use results::{write_results_csv, write_summary_csv, RESULTS_HEADER, SUMMARY_HEADER};
