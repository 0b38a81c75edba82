//! Human-readable rendering of a result document.

use std::fmt::Write;

use serde_json::Value;

fn list(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(", "),
        other => plain(other),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(_) => format!("[{}]", list(v)),
        other => other.to_string(),
    }
}

fn stop(v: &Value) -> String {
    match v["kind"].as_str() {
        Some("vanished") => format!("Λ^{} = 0", v["degree"]),
        Some("truncated") => format!("truncated at degree {} by the tensor bound", v["degree"]),
        _ => "stopped at the requested degree".into(),
    }
}

fn header(out: &mut String, doc: &Value) {
    let f = &doc["factorization"];
    let _ = writeln!(out, "{}  |X| = {}  conductor {}", plain(&f["name"]), f["order"], f["conductor"]);
    let _ = writeln!(out, "G = {{{}}}", list(&f["g"]));
    let _ = writeln!(out, "M = {{{}}}", list(&f["m"]));
}

fn calculus(out: &mut String, c: &Value) {
    let _ = writeln!(out, "\n{}  dim {}  class of {} (size {})  dim 𝓜₀ = {}  multiplicity {}", plain(&c["id"]), c["dim"], plain(&c["class"]["representative"]), c["class"]["size"], c["m0_dim"], c["multiplicity"]);
    let g = &c["gradings"];
    for (a, f) in c["f_basis"].as_array().into_iter().flatten().enumerate() {
        let _ = writeln!(out, "  {} = {}", plain(&f["name"]), plain(&f["text"]));
        let _ = writeln!(out, "      ‖·‖ = {}  ⟨·⟩ = {}  |·| = {}  c = {}", plain(&g["norm"][a]), plain(&g["bra"][a]), plain(&g["modg"][a]), plain(&c["c"][a]));
    }
    let _ = writeln!(out, "  θ = {}", plain(&c["theta"]["text"]));
    if let Some(h0) = c.get("h0_is_scalars") {
        let _ = writeln!(out, "  H⁰ = k·1: {}", if h0 == true { "yes" } else { "no" });
    }
}

fn equations(out: &mut String, title: &str, v: &Value) {
    let _ = writeln!(out, "  {title}:");
    for eq in v.as_array().into_iter().flatten() {
        let _ = writeln!(out, "    {} = {}", plain(&eq["lhs"]), plain(&eq["rhs"]));
    }
}

pub fn render(doc: &Value) -> String {
    let mut out = String::new();
    header(&mut out, doc);
    match doc["command"].as_str().unwrap_or("") {
        "classify" => {
            let z = &doc["z"];
            let sizes: Vec<String> = z["classes"].as_array().into_iter().flatten().map(|c| c["size"].to_string()).collect();
            let _ = writeln!(out, "Z: {} elements in classes of sizes {}", z["elements"].as_array().map_or(0, Vec::len), sizes.join(", "));
            let _ = writeln!(out, "{} calculi, dims [{}]", doc["calculi"].as_array().map_or(0, Vec::len), list(&doc["dims"]));
            for c in doc["calculi"].as_array().into_iter().flatten() {
                calculus(&mut out, c);
            }
        },
        "cartan" => {
            let c = &doc["calculus"];
            calculus(&mut out, c);
            let t = &c["commutation"];
            equations(&mut out, "commutation with δ_s", &t["with_delta"]);
            equations(&mut out, "commutation with u", &t["with_group"]);
            equations(&mut out, "d on δ_s", &t["d_delta"]);
            equations(&mut out, "d on u", &t["d_group"]);
            equations(&mut out, "braiding", &c["braiding"]);
        },
        "exterior" => {
            for c in doc["calculi"].as_array().into_iter().flatten() {
                let e = &c["exterior"];
                let dims: Vec<String> = e["lambda_dims"].as_array().into_iter().flatten().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "\n{}  dim {}  Λ dims {}  ({})", plain(&c["id"]), c["dim"], dims.join(":"), stop(&e["stop"]));
                for r in e["quadratic_relations"].as_array().into_iter().flatten() {
                    let _ = writeln!(out, "    {} = 0", plain(&r["text"]));
                }
            }
        },
        "cohomology" => {
            for c in doc["calculi"].as_array().into_iter().flatten() {
                let h = &c["cohomology"];
                let join = |v: &Value| v.as_array().into_iter().flatten().map(|d| d.to_string()).collect::<Vec<_>>().join(":");
                let _ = writeln!(out, "\n{}  dim {}  Λ dims {}  Betti {}  ({})", plain(&c["id"]), c["dim"], join(&h["lambda_dims"]), join(&h["betti"]), stop(&h["stop"]));
                let _ = writeln!(out, "    H⁰ = k·1: {}  θ ∈ H¹ nonzero: {}", h["h0_is_scalars"], h["theta_in_h1"]);
            }
        },
        "verify" => {
            for (name, s) in doc["suites"].as_object().into_iter().flatten() {
                let _ = writeln!(out, "{:<16} {}", name, if s["passed"] == true { "PASS" } else { "FAIL" });
                if let Some(items) = s["detail"].as_array() {
                    for i in items {
                        if let Some(id) = i.get("id") {
                            let _ = writeln!(out, "    {:<8} {}{}", plain(id), if i["passed"] == true { "PASS" } else { "FAIL " }, i["failures"].as_array().map(|f| f.iter().map(plain).collect::<Vec<_>>().join("; ")).unwrap_or_default());
                        }
                    }
                } else if s["passed"] != true {
                    let _ = writeln!(out, "    {}", plain(&s["detail"]));
                }
            }
            let _ = writeln!(out, "overall          {}", if doc["passed"] == true { "PASS" } else { "FAIL" });
        },
        _ => {},
    }
    out.trim_end().to_string()
}
