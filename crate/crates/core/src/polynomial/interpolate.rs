//! Tensor-product interpolation on Cartesian grids.

use std::collections::HashMap;

use num_traits::Zero;

use super::SparsePolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Monomial coefficients of the unique polynomial of degree `< nodes.len()`
/// through `(nodes[i], values[i])`, via Newton divided differences.
pub fn interpolate_univariate(nodes: &[Rational], values: &[Rational]) -> Result<Vec<Rational>> {
    if nodes.len() != values.len() {
        return Err(Error::InvalidArgument(format!(
            "{} nodes but {} values",
            nodes.len(),
            values.len()
        )));
    }
    check_distinct(nodes)?;
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    // Horner expansion of the Newton form into the monomial basis.
    let mut coeffs: Vec<Rational> = Vec::with_capacity(n);
    for j in (0..n).rev() {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &nodes[j];
        }
        next[0] += &dd[j];
        coeffs = next;
    }
    coeffs.truncate(n.max(1));
    Ok(coeffs)
}

fn check_distinct(nodes: &[Rational]) -> Result<()> {
    for i in 0..nodes.len() {
        if nodes[..i].contains(&nodes[i]) {
            return Err(Error::InvalidArgument(format!("duplicate interpolation node {}", nodes[i])));
        }
    }
    Ok(())
}

/// Integer nodes `0, 1, ..., degree`.
pub fn default_nodes(degree: usize) -> Vec<Rational> {
    (0..=degree).map(|k| Rational::from_integer(k.into())).collect()
}

/// Row-major grid of values: the last variable varies fastest.
#[derive(Clone, Debug)]
pub struct GridValues {
    pub shape: Vec<usize>,
    pub values: Vec<Rational>,
}

impl GridValues {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Multi-index of a flat position.
    pub fn index_of(shape: &[usize], mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; shape.len()];
        for (slot, &s) in idx.iter_mut().zip(shape).rev() {
            *slot = flat % s;
            flat /= s;
        }
        idx
    }

    pub fn flat_of(shape: &[usize], idx: &[usize]) -> usize {
        idx.iter().zip(shape).fold(0, |acc, (&i, &s)| acc * s + i)
    }
}

/// Interpolates from a map keyed by grid multi-indices (`point[j]` indexes
/// `nodes[j]`). Every variable needs exactly `degree_bounds[j] + 1` nodes and
/// the map must cover the full grid.
pub fn grid_interpolate(
    vars: &[String],
    nodes: &[Vec<Rational>],
    degree_bounds: &[usize],
    values: &HashMap<Vec<usize>, Rational>,
) -> Result<SparsePolynomial> {
    check_shape(vars, nodes, degree_bounds)?;
    let shape: Vec<usize> = nodes.iter().map(Vec::len).collect();
    let size: usize = shape.iter().product();
    let mut dense = Vec::with_capacity(size);
    for flat in 0..size {
        let idx = GridValues::index_of(&shape, flat);
        match values.get(&idx) {
            Some(v) => dense.push(v.clone()),
            None => {
                return Err(Error::InvalidArgument(format!(
                    "grid incomplete: no value at index {idx:?}"
                )))
            }
        }
    }
    interpolate_grid(vars, nodes, &GridValues { shape, values: dense })
}

fn check_shape(vars: &[String], nodes: &[Vec<Rational>], degree_bounds: &[usize]) -> Result<()> {
    if vars.len() != nodes.len() || vars.len() != degree_bounds.len() {
        return Err(Error::InvalidArgument(
            "variables, node lists and degree bounds differ in length".into(),
        ));
    }
    for ((v, ns), &deg) in vars.iter().zip(nodes).zip(degree_bounds) {
        if ns.len() != deg + 1 {
            return Err(Error::InvalidArgument(format!(
                "variable `{v}` has {} nodes for degree bound {deg}",
                ns.len()
            )));
        }
        check_distinct(ns)?;
    }
    Ok(())
}

/// Dense-grid interpolation, one variable at a time.
pub fn interpolate_grid(
    vars: &[String],
    nodes: &[Vec<Rational>],
    grid: &GridValues,
) -> Result<SparsePolynomial> {
    let shape: Vec<usize> = nodes.iter().map(Vec::len).collect();
    if shape != grid.shape || grid.values.len() != shape.iter().product::<usize>() {
        return Err(Error::InvalidArgument("grid shape does not match node lists".into()));
    }
    for ns in nodes {
        check_distinct(ns)?;
    }
    let mut data = grid.values.clone();
    let total = data.len();
    for (axis, axis_nodes) in nodes.iter().enumerate() {
        let len = shape[axis];
        let stride: usize = shape[axis + 1..].iter().product();
        let mut fiber = Vec::with_capacity(len);
        for base in 0..total {
            // visit each fiber once, from its start position
            if !(base / stride).is_multiple_of(len) {
                continue;
            }
            fiber.clear();
            fiber.extend((0..len).map(|k| data[base + k * stride].clone()));
            let coeffs = interpolate_univariate(axis_nodes, &fiber)?;
            for (k, c) in coeffs.into_iter().enumerate() {
                data[base + k * stride] = c;
            }
        }
    }
    let mut poly = SparsePolynomial::zero(vars.to_vec());
    for (flat, c) in data.into_iter().enumerate() {
        if !c.is_zero() {
            let exps = GridValues::index_of(&shape, flat).into_iter().map(|k| k as u32).collect();
            poly.add_term(exps, c);
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn quadratic_through_three_points() {
        let c = interpolate_univariate(&default_nodes(2), &[int(1), int(2), int(5)]).unwrap();
        assert_eq!(c, vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn constant_values() {
        let c = interpolate_univariate(&default_nodes(3), &vec![int(4); 4]).unwrap();
        assert_eq!(c, vec![int(4), int(0), int(0), int(0)]);
    }

    #[test]
    fn rational_nodes() {
        // 2x - 1/3 at x = 1/2, -3
        let nodes = [frac(1, 2), int(-3)];
        let values = [frac(2, 3), frac(-19, 3)];
        assert_eq!(interpolate_univariate(&nodes, &values).unwrap(), vec![frac(-1, 3), int(2)]);
    }

    #[test]
    fn bivariate_x_plus_y() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let nodes = vec![default_nodes(1), default_nodes(1)];
        let mut values = HashMap::new();
        for i in 0..2 {
            for j in 0..2 {
                values.insert(vec![i, j], int((i + j) as i64));
            }
        }
        let p = grid_interpolate(&vars, &nodes, &[1, 1], &values).unwrap();
        assert_eq!(p.to_string(), "x + y");
    }

    #[test]
    fn rejects_duplicates_and_holes() {
        assert!(interpolate_univariate(&[int(1), int(1)], &[int(0), int(0)]).is_err());
        let vars = vec!["x".to_string()];
        let mut values = HashMap::new();
        values.insert(vec![0], int(1));
        assert!(grid_interpolate(&vars, &[default_nodes(1)], &[1], &values).is_err());
        assert!(grid_interpolate(&vars, &[default_nodes(1)], &[2], &values).is_err());
    }
}
