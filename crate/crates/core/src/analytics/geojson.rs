use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::country::{CountryRegistry, Iso3};

use super::AnalyticsError;

/// Feature properties searched, in order, for a country code.
pub const CODE_PROPERTIES: [&str; 5] = ["iso3", "ISO3", "ISO_A3", "ADM0_A3", "GID_0"];

/// Colour range suggested for LCOH difference maps, USD/kg. Stored data is
/// never clipped.
pub const DISPLAY_CLIP_USD_PER_KG: [f64; 2] = [-2.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CountryProperties {
    pub i_final: Option<f64>,
    pub lcoh: Option<f64>,
    pub rel_vs_uniform: Option<f64>,
}

fn number(v: Option<f64>) -> Value {
    // round to the CSV precision so the file is stable across platforms
    v.map(|x| (x * 1e6).round() / 1e6 + 0.0)
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn feature_code(feature: &Map<String, Value>, registry: &CountryRegistry) -> Option<Iso3> {
    let props = feature.get("properties").and_then(Value::as_object);
    CODE_PROPERTIES
        .iter()
        .filter_map(|key| props.and_then(|p| p.get(*key)).and_then(Value::as_str))
        .chain(feature.get("id").and_then(Value::as_str))
        .find_map(|raw| registry.normalize(raw).ok())
}

/// Attach `i_final`, `lcoh` and `rel_vs_uniform` to every feature of a
/// boundary FeatureCollection. Features without a matching country get
/// null values; the feature count never changes.
pub fn join_properties(
    mut boundaries: Value,
    values: &BTreeMap<Iso3, CountryProperties>,
    registry: &CountryRegistry,
    config_hash: &str,
) -> Result<Value, AnalyticsError> {
    let root = boundaries
        .as_object_mut()
        .ok_or_else(|| AnalyticsError::InvalidGeoJson("top level is not an object".into()))?;
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(AnalyticsError::InvalidGeoJson("expected a FeatureCollection".into()));
    }
    let features = root
        .get_mut("features")
        .and_then(Value::as_array_mut)
        .ok_or_else(|| AnalyticsError::InvalidGeoJson("missing features array".into()))?;
    for (i, feature) in features.iter_mut().enumerate() {
        let feature = feature
            .as_object_mut()
            .ok_or_else(|| AnalyticsError::InvalidGeoJson(format!("feature {i} is not an object")))?;
        let joined = feature_code(feature, registry)
            .and_then(|c| values.get(&c))
            .copied()
            .unwrap_or_default();
        let props = feature.entry("properties").or_insert_with(|| Value::Object(Map::new()));
        if props.is_null() {
            *props = Value::Object(Map::new());
        }
        let props = props
            .as_object_mut()
            .ok_or_else(|| AnalyticsError::InvalidGeoJson(format!("feature {i} properties is not an object")))?;
        props.insert("i_final".into(), number(joined.i_final));
        props.insert("lcoh".into(), number(joined.lcoh));
        props.insert("rel_vs_uniform".into(), number(joined.rel_vs_uniform));
    }
    root.insert("config_sha256".into(), Value::String(config_hash.to_string()));
    root.insert(
        "display_clip_usd_per_kg".into(),
        Value::Array(DISPLAY_CLIP_USD_PER_KG.iter().map(|v| number(Some(*v))).collect()),
    );
    Ok(boundaries)
}
