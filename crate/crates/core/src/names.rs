//! Host-node and vertex naming used by the reduction.
//!
//! Host nodes: `u_i`, `w_{i,j}`; the `s`-th subdivision node on the
//! ordered-pair path `(i, j)` is `x[i,j]_s` or `y[i,j]_s`; the extra
//! subdivision nodes are `x[i]_0e`, `y[i]_0e`, `x[i,j]_pe`, `y[i,j]_pe`;
//! pendant nodes of the K pattern are `pi_x[i]`, `pi_y[i]`, `pi_x[i,j]`,
//! `pi_y[i,j]`. Vertices of the target graph are `ax[i]`, `ay[i]`,
//! `z[i]_s`, `ax[i,j]`, `ay[i,j]`, `r[i,j]_s,t` and `beta`. All indices are
//! 1-based.

pub const BETA: &str = "beta";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    X,
    Y,
}

impl Strand {
    pub fn letter(self) -> char {
        match self {
            Strand::X => 'x',
            Strand::Y => 'y',
        }
    }
}

pub fn u(i: usize) -> String {
    format!("u_{i}")
}

pub fn w(i: usize, j: usize) -> String {
    let (a, b) = (i.min(j), i.max(j));
    format!("w_{{{a},{b}}}")
}

/// Label of the H edge whose subdivision is the ordered-pair path `(i, j)`.
pub fn path_label(strand: Strand, i: usize, j: usize) -> String {
    format!("{}[{i},{j}]", strand.letter())
}

pub fn eps_start(strand: Strand, i: usize) -> String {
    format!("{}[{i}]_0e", strand.letter())
}

pub fn eps_end(strand: Strand, i: usize, j: usize) -> String {
    format!("{}[{i},{j}]_pe", strand.letter())
}

pub fn pi_color(strand: Strand, i: usize) -> String {
    format!("pi_{}[{i}]", strand.letter())
}

pub fn pi_pair(strand: Strand, i: usize, j: usize) -> String {
    format!("pi_{}[{i},{j}]", strand.letter())
}

/// Resolves path positions to host node names for a fixed `p`, applying
/// the identifications `x[i,j]_0 = u_i` and `x[i,j]_{p+1} = w_{i,j}`.
#[derive(Clone, Copy, Debug)]
pub struct PathNames {
    pub p: usize,
}

impl PathNames {
    pub fn node(&self, strand: Strand, i: usize, j: usize, s: usize) -> String {
        assert!(
            s <= self.p + 1,
            "path position {s} beyond p+1 = {}",
            self.p + 1
        );
        if s == 0 {
            u(i)
        } else if s == self.p + 1 {
            w(i, j)
        } else {
            format!("{}_{s}", path_label(strand, i, j))
        }
    }

    /// Canonical host name for `name`, which may be written as a path
    /// position such as `x[1,2]_0` or `y[2,1]_{p+1}`. Names that are not
    /// path positions are returned unchanged.
    pub fn resolve(&self, name: &str) -> String {
        match parse_path_position(name) {
            Some((strand, i, j, s)) if s <= self.p + 1 => self.node(strand, i, j, s),
            _ => name.to_owned(),
        }
    }
}

fn parse_path_position(name: &str) -> Option<(Strand, usize, usize, usize)> {
    let strand = match name.as_bytes().first()? {
        b'x' => Strand::X,
        b'y' => Strand::Y,
        _ => return None,
    };
    let rest = name[1..].strip_prefix('[')?;
    let (pair, pos) = rest.split_once("]_")?;
    let (i, j) = pair.split_once(',')?;
    Some((strand, i.parse().ok()?, j.parse().ok()?, pos.parse().ok()?))
}

pub fn alpha_color(strand: Strand, i: usize) -> String {
    format!("a{}[{i}]", strand.letter())
}

pub fn alpha_pair(strand: Strand, i: usize, j: usize) -> String {
    format!("a{}[{i},{j}]", strand.letter())
}

pub fn z(i: usize, s: usize) -> String {
    format!("z[{i}]_{s}")
}

pub fn r(i: usize, j: usize, s: usize, t: usize) -> String {
    format!("r[{i},{j}]_{s},{t}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_resolve_to_branch_nodes() {
        let names = PathNames { p: 3 };
        assert_eq!(names.resolve("x[1,2]_0"), "u_1");
        assert_eq!(names.resolve("y[2,1]_0"), "u_2");
        assert_eq!(names.resolve("x[2,1]_4"), "w_{1,2}");
        assert_eq!(names.resolve("y[1,3]_4"), "w_{1,3}");
        assert_eq!(names.resolve("x[1,3]_2"), "x[1,3]_2");
        assert_eq!(names.resolve("x[1]_0e"), "x[1]_0e");
        assert_eq!(names.resolve("beta"), "beta");
        assert_eq!(w(3, 1), "w_{1,3}");
    }
}
