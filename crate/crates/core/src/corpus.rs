//! Bundled diagrams, golden homology tables and axis splits of closed diagrams.

use crate::diagram::{parse_tangle, Slice, TangleDiagram, TangleSide};
use crate::error::{Error, Result};
use crate::homology::HomologyTable;
use serde_json::Value;
use std::path::Path;

/// A bundled text file.
#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! bundle {
    ($dir:literal, $ext:literal; $($name:literal),* $(,)?) => {
        &[$(Entry { name: $name, text: include_str!(concat!("../data/", $dir, "/", $name, $ext)) }),*]
    };
}

/// Closed diagrams, at most eight crossings each.
pub const LINKS: &[Entry] = bundle!("corpus", ".tangle";
    "unknot",
    "hopf-positive",
    "hopf-negative",
    "left-trefoil",
    "right-trefoil",
    "figure-eight",
    "hopf-sum-left-trefoil",
    "left-trefoil-sum-right-trefoil",
    "left-trefoil-sum-left-trefoil",
    "figure-eight-sum-hopf",
);

/// Inside and outside halves used by the worked examples.
pub const TANGLES: &[Entry] = bundle!("corpus", ".tangle";
    "unknot-half",
    "unknot-half-outside",
    "left-trefoil-outside",
    "trefoil",
    "right-trefoil-outside",
    "left-trefoil-inside",
    "right-trefoil-inside",
    "hopf-inside",
    "kink-inside",
    "second-move-inside",
    "flat-inside",
    "third-move-before-inside",
    "third-move-after-inside",
);

/// Homology tables of bundled links, with the halves they pair.
pub const GOLDEN: &[Entry] = bundle!("golden", ".json";
    "left-trefoil",
    "hopf-sum-left-trefoil",
    "left-trefoil-sum-right-trefoil",
    "figure-eight",
);

/// Parses a bundled link or tangle by name.
pub fn diagram(name: &str) -> Result<TangleDiagram> {
    LINKS
        .iter()
        .chain(TANGLES)
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Parse(format!("no bundled diagram named '{name}'")))
        .and_then(|e| parse_tangle(e.text))
}

/// A golden table and the names of the diagrams it belongs to.
#[derive(Clone, Debug)]
pub struct Golden {
    pub link: String,
    pub inside: Option<String>,
    pub outside: Option<String>,
    pub table: HomologyTable,
}

impl Golden {
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).and_then(Value::as_str).map(str::to_owned);
        Ok(Golden {
            link: field("link").ok_or_else(|| Error::Parse("golden table without a link name".into()))?,
            inside: field("inside"),
            outside: field("outside"),
            table: HomologyTable::from_json(v)?,
        })
    }
}

pub fn goldens() -> Result<Vec<Golden>> {
    GOLDEN.iter().map(|e| Golden::from_json(&serde_json::from_str(e.text)?)).collect()
}

pub fn golden(link: &str) -> Result<Golden> {
    goldens()?
        .into_iter()
        .find(|g| g.link == link)
        .ok_or_else(|| Error::Parse(format!("no golden table for '{link}'")))
}

/// Every `*.tangle` file in a directory, sorted by file name.
pub fn read_dir(dir: &Path) -> Result<Vec<(String, TangleDiagram)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "tangle"));
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p)?;
            let t = parse_tangle(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            Ok((name, t))
        })
        .collect()
}

/// A closed diagram cut along the axis at one level.
#[derive(Clone, Debug)]
pub struct Split {
    pub level: usize,
    pub inside: TangleDiagram,
    pub outside: TangleDiagram,
}

/// Cuts a closed diagram after `level` slices. The prefix, read backwards,
/// becomes the inside tangle and the suffix the outside tangle; both keep the
/// crossing signs of the link and agree on the orientation at the cut.
pub fn split_at(link: &TangleDiagram, level: usize) -> Result<Split> {
    if link.n != 0 || link.side != TangleSide::Outside {
        return Err(Error::Mismatch("only closed diagrams can be split".into()));
    }
    if level >= link.levels() {
        return Err(Error::Index(format!("level {level} of a diagram with {} levels", link.levels())));
    }
    let w = link.width(level);
    let n = w / 2;
    let inside_slices: Vec<Slice> = link.slices[..level]
        .iter()
        .rev()
        .map(|s| match *s {
            Slice::Cap(i) => Slice::Cup(i),
            Slice::Cup(i) => Slice::Cap(i),
            Slice::Cross { at, over_high } => Slice::Cross { at, over_high: !over_high },
        })
        .collect();
    let kc = link.crossings.iter().filter(|&&k| k < level).count();
    let inside_signs: Vec<Option<i8>> = link.signs[..kc].iter().rev().map(|&s| Some(s)).collect();
    let outside_signs: Vec<Option<i8>> = link.signs[kc..].iter().map(|&s| Some(s)).collect();
    let outside_slices = link.slices[level..].to_vec();
    for mask in 0u32..1 << w {
        let o: Vec<bool> = (0..w).map(|i| mask >> i & 1 == 1).collect();
        let i: Vec<bool> = o.iter().map(|b| !b).collect();
        let pin = |v: Vec<bool>| if n == 0 { None } else { Some(v) };
        let outside = TangleDiagram::new(TangleSide::Outside, n, outside_slices.clone(), pin(o), &outside_signs, None);
        let inside = TangleDiagram::new(TangleSide::Inside, n, inside_slices.clone(), pin(i), &inside_signs, None);
        if let (Ok(inside), Ok(outside)) = (inside, outside) {
            return Ok(Split { level, inside, outside });
        }
    }
    Err(Error::Orientation(format!("no orientation of the cut at level {level} matches the link")))
}

/// Splits at every level whose width is at most `2 * max_n`.
pub fn splits(link: &TangleDiagram, max_n: usize) -> Result<Vec<Split>> {
    (0..link.levels()).filter(|&k| link.width(k) <= 2 * max_n).map(|k| split_at(link, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::glue;

    #[test]
    fn bundled_files_parse() {
        for e in LINKS {
            let t = parse_tangle(e.text).unwrap();
            assert_eq!(t.n, 0, "{}", e.name);
            assert!(t.crossing_count() <= 8, "{}", e.name);
        }
        for e in TANGLES {
            assert!(parse_tangle(e.text).unwrap().n > 0, "{}", e.name);
        }
        for g in goldens().unwrap() {
            diagram(&g.link).unwrap();
            for half in g.inside.iter().chain(&g.outside) {
                diagram(half).unwrap();
            }
        }
    }

    #[test]
    fn splits_glue_back_to_the_link() {
        for e in LINKS {
            let link = parse_tangle(e.text).unwrap();
            let all = splits(&link, 2).unwrap();
            assert!(all.len() >= 2, "{}", e.name);
            for s in all {
                let g = glue(&s.inside, &s.outside).unwrap();
                assert_eq!(g.slices, link.slices, "{} at {}", e.name, s.level);
                assert_eq!(g.signs, link.signs, "{} at {}", e.name, s.level);
            }
        }
    }

    #[test]
    fn wide_levels_are_skipped() {
        let link = diagram("left-trefoil-sum-right-trefoil").unwrap();
        let levels: Vec<usize> = splits(&link, 2).unwrap().iter().map(|s| s.level).collect();
        assert!(levels.iter().all(|&k| link.width(k) <= 4));
        assert!(!levels.contains(&3));
    }
}
