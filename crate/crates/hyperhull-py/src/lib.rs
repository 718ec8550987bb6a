//! Python extension module exposing the main types and operations: vertex
//! enumeration (standard, lattice and general-hyperbola forms), counting,
//! the bound scan, next-vertex queries and factorization.
//!
//! Rationals cross the boundary as strings in `num/den` form (`/1` omitted)
//! so arbitrary precision survives; integers use native Python ints.

use std::str::FromStr;

use num_traits::Signed;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hyperhull::bounds;
use hyperhull::exactmath::{Int, Rat};
use hyperhull::factor;
use hyperhull::hull::{enumerate_hull, next_vertex_from_x, HullPath, NextResult};
use hyperhull::lattice::{AffineLattice, Basis2, Point2, Vec2};
use hyperhull::raycast;
use hyperhull::transform::{map_back, to_standard, BranchSelector, GeneralHyperbola};

fn parse_rat(what: &str, s: &str) -> PyResult<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| PyValueError::new_err(format!("invalid rational for {what}: {s:?} ({e})")))
}

fn domain_err(e: hyperhull::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn path_to_strings(path: &HullPath) -> Vec<(String, String)> {
    path.iter()
        .map(|p| (p.x.to_string(), p.y.to_string()))
        .collect()
}

fn lattice_from(
    lattice: Option<[String; 4]>,
    anchor: Option<[String; 2]>,
) -> PyResult<AffineLattice> {
    let anchor = match anchor {
        Some([x, y]) => Point2::new(parse_rat("anchor", &x)?, parse_rat("anchor", &y)?),
        None => Point2::origin(),
    };
    match lattice {
        Some([w1x, w1y, w2x, w2y]) => {
            let basis = Basis2::new(
                Vec2::new(parse_rat("lattice", &w1x)?, parse_rat("lattice", &w1y)?),
                Vec2::new(parse_rat("lattice", &w2x)?, parse_rat("lattice", &w2y)?),
            )
            .map_err(domain_err)?;
            Ok(AffineLattice::new(anchor, &basis))
        }
        None => Ok(AffineLattice::z2_at(anchor)),
    }
}

/// Hull vertices of {xy >= n} over an affine lattice (the integer lattice by
/// default), as (x, y) pairs of rational strings in chain order.
#[pyfunction]
#[pyo3(signature = (n, lattice=None, anchor=None))]
fn vertices(
    py: Python<'_>,
    n: &str,
    lattice: Option<[String; 4]>,
    anchor: Option<[String; 2]>,
) -> PyResult<Vec<(String, String)>> {
    let n = parse_rat("n", n)?;
    if !n.is_positive() {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let lat = lattice_from(lattice, anchor)?;
    let path = py.detach(|| enumerate_hull(&n, &lat));
    Ok(path_to_strings(&path))
}

/// Hull vertices of a general hyperbola a(x-x0)^2 + b(x-x0)(y-y0) +
/// c(y-y0)^2 = n in original integer coordinates; the branch is picked by a
/// sample point strictly inside the wanted component.
#[pyfunction]
fn vertices_general(
    py: Python<'_>,
    a: Int,
    b: Int,
    c: Int,
    x0: &str,
    y0: &str,
    n: &str,
    sample: (String, String),
) -> PyResult<Vec<(Int, Int)>> {
    let h = GeneralHyperbola::new(
        a,
        b,
        c,
        parse_rat("x0", x0)?,
        parse_rat("y0", y0)?,
        parse_rat("n", n)?,
    )
    .map_err(domain_err)?;
    let branch = BranchSelector::Sample(Point2::new(
        parse_rat("sample", &sample.0)?,
        parse_rat("sample", &sample.1)?,
    ));
    let sp = to_standard(&h, &branch).map_err(domain_err)?;
    let back = py.detach(|| {
        let path = enumerate_hull(sp.n_prime(), sp.lattice());
        map_back(&sp, &path)
    });
    let back = back.map_err(domain_err)?;
    Ok(back
        .iter()
        .map(|p| (p.x.to_integer(), p.y.to_integer()))
        .collect())
}

/// Number of hull vertices V(n) over the integer lattice.
#[pyfunction]
fn count(py: Python<'_>, n: Int) -> PyResult<u64> {
    if !n.is_positive() {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(py.detach(|| bounds::count_vertices(&n)))
}

/// Scan V(n) for n in [from, to] with the exact bound checkers; returns
/// (n, V, lower_ok, upper_ok) rows. Raises on a bound violation.
#[pyfunction]
#[pyo3(signature = (from_n, to_n, chunks=1))]
fn scan(
    py: Python<'_>,
    from_n: u64,
    to_n: u64,
    chunks: usize,
) -> PyResult<Vec<(u64, u64, bool, bool)>> {
    let reports = py
        .detach(|| bounds::scan_chunked(from_n, to_n, chunks))
        .map_err(domain_err)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.n, r.v, r.lower_ok, r.upper_ok))
        .collect())
}

/// All divisors of n, found by walking hull vertices with x <= sqrt(n).
#[pyfunction]
fn divisors(py: Python<'_>, n: Int) -> PyResult<Vec<Int>> {
    if !n.is_positive() {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(py.detach(|| factor::divisors_via_hull(&n).divisors))
}

/// Smallest divisor of n in (1, sqrt(n)], or None when n is prime.
#[pyfunction]
#[pyo3(signature = (n, chunks=1))]
fn find_factor(py: Python<'_>, n: Int, chunks: u32) -> PyResult<Option<Int>> {
    if n < Int::from(2) {
        return Err(PyValueError::new_err("n must be at least 2"));
    }
    if chunks < 1 {
        return Err(PyValueError::new_err("chunks must be at least 1"));
    }
    Ok(py.detach(|| factor::find_factor(&n, chunks)))
}

/// First hull vertex with x >= x_start over the integer lattice, as a pair
/// of rational strings, or None past the final vertex.
#[pyfunction]
fn next_vertex(py: Python<'_>, n: &str, x_start: &str) -> PyResult<Option<(String, String)>> {
    let n = parse_rat("n", n)?;
    if !n.is_positive() {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let x = parse_rat("x_start", x_start)?;
    if x.is_negative() {
        return Err(PyValueError::new_err("x_start must be nonnegative"));
    }
    let res = py.detach(|| next_vertex_from_x(&n, &AffineLattice::z2(), &x));
    Ok(match res {
        NextResult::Finite(p) => Some((p.x.to_string(), p.y.to_string())),
        NextResult::Infinite => None,
    })
}

/// Whether (x, y) lies in the closed region {x >= 0, y >= 0, xy >= n}.
#[pyfunction]
fn contains(n: &str, x: &str, y: &str) -> PyResult<bool> {
    let n = parse_rat("n", n)?;
    if !n.is_positive() {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let p = Point2::new(parse_rat("x", x)?, parse_rat("y", y)?);
    Ok(raycast::contains(&n, &p))
}

#[pymodule]
fn hyperhull_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(vertices, m)?)?;
    m.add_function(wrap_pyfunction!(vertices_general, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(divisors, m)?)?;
    m.add_function(wrap_pyfunction!(find_factor, m)?)?;
    m.add_function(wrap_pyfunction!(next_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(contains, m)?)?;
    Ok(())
}
