use serde_json::{json, Map, Value};
use thermo_core::rational::to_f64;
use thermo_core::transport::{BipartiteForest, PlaneOrders};
use thermo_core::{
    format_rational, parse_rational, Decomposition, ExtremalState, Matrix, Point, Rational, State,
    ThermoCurve,
};

pub fn rational(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn state(p: &State) -> Value {
    vector(p.as_slice())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn point((x, y): &Point) -> Value {
    json!([format_rational(x), format_rational(y)])
}

pub fn curve(c: &ThermoCurve) -> Value {
    json!({
        "order": c.order(),
        "elbows": c.elbows().iter().map(point).collect::<Vec<_>>(),
    })
}

pub fn extremal(e: &ExtremalState) -> Value {
    json!({ "state": state(&e.state), "order": e.order })
}

pub fn decomposition(d: &Decomposition) -> Value {
    Value::Array(
        d.terms
            .iter()
            .map(|t| json!({ "weight": rational(&t.weight), "state": state(&t.state) }))
            .collect(),
    )
}

pub fn forest(f: &BipartiteForest) -> Value {
    json!({
        "rows": f.rows(),
        "cols": f.cols(),
        "edges": f.edges().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "components": f.components().len(),
        "tree": f.is_tree(),
    })
}

pub fn plane_orders(o: &PlaneOrders) -> Value {
    json!({ "out_order": o.out_order, "in_order": o.in_order })
}

/// Leaf values made only of rational strings, possibly nested in arrays,
/// converted to floats. `None` for anything else.
fn approximate(v: &Value) -> Option<Value> {
    match v {
        Value::String(s) => {
            let x = parse_rational(s).ok()?;
            serde_json::Number::from_f64(to_f64(&x)).map(Value::Number)
        }
        Value::Array(items) if !items.is_empty() => items
            .iter()
            .map(approximate)
            .collect::<Option<Vec<_>>>()
            .map(Value::Array),
        _ => None,
    }
}

/// Adds a `<key>_float` sibling next to every exact rational field.
pub fn annotate_floats(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let mut extra = Map::new();
            for (k, item) in map.iter_mut() {
                match approximate(item) {
                    Some(f) => {
                        extra.insert(format!("{k}_float"), f);
                    }
                    None => annotate_floats(item),
                }
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(annotate_floats),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_sit_next_to_exact_fields() {
        let mut v =
            json!([{ "weight": "1/2", "state": ["1/4", "3/4"], "order": [1, 0], "name": "x" }]);
        annotate_floats(&mut v);
        assert_eq!(
            v,
            json!([{
                "weight": "1/2", "weight_float": 0.5,
                "state": ["1/4", "3/4"], "state_float": [0.25, 0.75],
                "order": [1, 0], "name": "x",
            }])
        );
    }
}
