//! Bundled example documents.

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

macro_rules! example {
    ($name:literal, $summary:literal) => {
        Example {
            name: $name,
            summary: $summary,
            text: include_str!(concat!("../corpus/", $name, ".json")),
        }
    };
}

pub const EXAMPLES: &[Example] = &[
    example!("circle", "cone(1 - z): Novikov homology of the circle"),
    example!(
        "circle-exercise",
        "fundamental domain of a circle map with two critical points"
    ),
    example!("torus-identity", "mapping torus of the identity of the circle"),
    example!(
        "torus-degree-two-plus",
        "mapping torus of the degree-2 map, plus orientation"
    ),
    example!(
        "torus-degree-two-minus",
        "mapping torus of the degree-2 map, minus orientation"
    ),
    example!("domination-degree-two", "finite domination of the minus degree-2 torus"),
    example!("trefoil", "trefoil Seifert datum"),
    example!("non-fibered", "Seifert datum with Alexander polynomial 2 - 3z + 2z^2"),
    example!("scalar-domain", "one-generator fundamental domain with h_D = 1"),
    example!(
        "inequalities-degree-two",
        "Morse-Novikov inequalities for the minus degree-2 torus"
    ),
    example!("integral-homology", "integral homology of a small complex with torsion"),
];

pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}
