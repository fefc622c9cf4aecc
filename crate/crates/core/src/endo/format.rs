//! Endomorphism file format:
//!
//! ```text
//! field p=5 k=1
//! nvars 4
//! x1 = 1*x1 + 1*x2*x3
//! x2 = 1*x2
//! x3 = 1*x3
//! x4 = 1*x4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input. Rendering
//! is canonical, so equal maps produce identical files.

use super::Endomorphism;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;

impl Endomorphism {
    pub fn render_file(&self) -> String {
        let mut out = format!("field {}\nnvars {}\n", self.field.descriptor(), self.nvars());
        for (i, p) in self.images.iter().enumerate() {
            out.push_str(&format!("x{} = {}\n", i + 1, p.render()));
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Endomorphism> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let field_line = lines.next().ok_or_else(|| Error::Parse("missing field line".into()))?;
        let desc = field_line
            .strip_prefix("field")
            .ok_or_else(|| Error::Parse(format!("expected `field ...`, found `{field_line}`")))?;
        let field = Field::parse_descriptor(desc)?;
        let nv_line = lines.next().ok_or_else(|| Error::Parse("missing nvars line".into()))?;
        let n: usize = nv_line
            .strip_prefix("nvars")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `nvars <n>`, found `{nv_line}`")))?;
        let mut images: Vec<Option<Polynomial>> = vec![None; n];
        for line in lines {
            let (lhs, rhs) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("expected `xi = ...`, found `{line}`")))?;
            let (i, e) = crate::poly::parse_factor(lhs.trim())?;
            if e != 1 || i >= n {
                return Err(Error::Parse(format!("bad image label `{}`", lhs.trim())));
            }
            if images[i].is_some() {
                return Err(Error::Parse(format!("image of x{} given twice", i + 1)));
            }
            images[i] = Some(Polynomial::parse(&field, n, rhs)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::Parse(format!("image of x{} missing", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::from_images(&field, images)
    }
}
