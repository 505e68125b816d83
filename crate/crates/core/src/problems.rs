//! Built-in two-dimensional test systems with their starting boxes.

use crate::boxes::IntervalBox;
use crate::system::SystemDef;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Problem {
    pub name: &'static str,
    pub variables: [&'static str; 2],
    pub functions: [&'static str; 2],
    pub jacobian: [[&'static str; 2]; 2],
    pub bounds: [(f64, f64); 2],
}

impl Problem {
    pub fn system(&self) -> SystemDef {
        let jac: Vec<Vec<&str>> = self.jacobian.iter().map(|r| r.to_vec()).collect();
        SystemDef::parse(&self.variables, &self.functions, Some(&jac))
            .expect("built-in systems are well formed")
    }

    /// The system relying on finite-difference Jacobians.
    pub fn system_without_jacobian(&self) -> SystemDef {
        SystemDef::parse(&self.variables, &self.functions, None)
            .expect("built-in systems are well formed")
    }

    pub fn initial_box(&self) -> IntervalBox {
        IntervalBox::from_bounds(&self.bounds).expect("built-in boxes are valid")
    }
}

const XY: [&str; 2] = ["x", "y"];

pub const EXAMPLE1: Problem = Problem {
    name: "example1",
    variables: XY,
    functions: ["y+x-1", "y-exp(-(x^2))"],
    jacobian: [["1", "1"], ["2*x*exp(-(x^2))", "1"]],
    bounds: [(0.0, 1.0), (0.0, 1.0)],
};

pub const F1: Problem = Problem {
    name: "f1",
    variables: XY,
    functions: ["x^2+y^2-1", "x-y^2"],
    jacobian: [["2*x", "2*y"], ["1", "-2*y"]],
    bounds: [(0.0, 1.0), (0.0, 1.0)],
};

pub const F2: Problem = Problem {
    name: "f2",
    variables: XY,
    functions: ["2*x-y-exp(-x)", "-x+2*y-exp(-y)"],
    jacobian: [["2+exp(-x)", "-1"], ["-1", "2+exp(-y)"]],
    bounds: [(0.0, 1.0), (0.0, 1.0)],
};

pub const F3: Problem = Problem {
    name: "f3",
    variables: XY,
    functions: ["sin(x)+cos(y)+2*(x-1)", "y-0.5*(x-0.5)^2-0.5"],
    jacobian: [["cos(x)+2", "-sin(y)"], ["-(x-0.5)", "1"]],
    bounds: [(0.0, 1.0), (0.0, 1.0)],
};

pub const F4: Problem = Problem {
    name: "f4",
    variables: XY,
    functions: ["x^2-cos(x*y)", "exp(x*y)+y"],
    jacobian: [
        ["2*x+y*sin(x*y)", "x*sin(x*y)"],
        ["y*exp(x*y)", "x*exp(x*y)+1"],
    ],
    bounds: [(0.0, 1.0), (-1.0, 0.0)],
};

pub const F5: Problem = Problem {
    name: "f5",
    variables: XY,
    functions: ["x*cos(y)+y*sin(x)-0.5", "exp(-exp(-(x+y)))-y*(1+x^2)"],
    jacobian: [
        ["cos(y)+y*cos(x)", "-x*sin(y)+sin(x)"],
        [
            "exp(-exp(-(x+y)))*exp(-(x+y))-2*x*y",
            "exp(-exp(-(x+y)))*exp(-(x+y))-(1+x^2)",
        ],
    ],
    bounds: [(0.0, 1.1), (0.0, 2.0)],
};

pub const F6: Problem = Problem {
    name: "f6",
    variables: XY,
    functions: ["x+5*(x-y)^3-1", "0.5*(y-x)^3+y"],
    jacobian: [
        ["1+15*(x-y)^2", "-15*(x-y)^2"],
        ["-1.5*(y-x)^2", "1.5*(y-x)^2+1"],
    ],
    bounds: [(0.4, 1.0), (0.0, 0.4)],
};

/// The six testing maps, in order.
pub const TESTING_MAPS: [Problem; 6] = [F1, F2, F3, F4, F5, F6];

pub fn by_name(name: &str) -> Option<Problem> {
    std::iter::once(EXAMPLE1)
        .chain(TESTING_MAPS)
        .find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_jacobians_match_finite_differences() {
        for p in std::iter::once(EXAMPLE1).chain(TESTING_MAPS) {
            let exact = p.system();
            let fd = p.system_without_jacobian();
            let c = p.initial_box().center();
            let a = exact.jacobian_at(&c).unwrap();
            let b = fd.jacobian_at(&c).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        (a.get(i, j) - b.get(i, j)).abs() < 1e-6,
                        "{} ({i},{j})",
                        p.name
                    );
                }
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("f4").unwrap().bounds, [(0.0, 1.0), (-1.0, 0.0)]);
        assert!(by_name("f7").is_none());
    }
}
