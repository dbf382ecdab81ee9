//! Remote completion port.
//!
//! One request per argument: `{model, temperature: 0, seed: 0, prompt}` as
//! JSON, bearer credentials if configured. The response body must contain
//! the mode's structured object somewhere; see [`super::parse_response`].

use std::path::Path;
use std::time::Duration;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{parse_response, Mode, NormalizationResult, NormalizeError, Normalizer};

pub const ENV_ENDPOINT: &str = "SYLLOGISM_ENDPOINT";
pub const ENV_MODEL: &str = "SYLLOGISM_MODEL";
pub const ENV_API_KEY: &str = "SYLLOGISM_API_KEY";
pub const ENV_TIMEOUT: &str = "SYLLOGISM_TIMEOUT_SECS";
pub const ENV_MAX_IN_FLIGHT: &str = "SYLLOGISM_MAX_IN_FLIGHT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemoteConfig {
    pub endpoint: String,
    pub model: String,
    pub api_key: Option<String>,
    pub timeout: Duration,
    pub max_in_flight: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    endpoint: Option<String>,
    model: Option<String>,
    api_key: Option<String>,
    timeout_secs: Option<u64>,
    max_in_flight: Option<usize>,
}

impl RemoteConfig {
    pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);
    pub const DEFAULT_MAX_IN_FLIGHT: usize = 4;

    /// Reads an optional JSON config file, then lets environment variables
    /// override individual fields.
    pub fn load(path: Option<&Path>) -> Result<Self, NormalizeError> {
        Self::load_with(path, |k| std::env::var(k).ok())
    }

    pub fn load_with(path: Option<&Path>, env: impl Fn(&str) -> Option<String>) -> Result<Self, NormalizeError> {
        let mut file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| NormalizeError::Config(format!("{}: {e}", p.display())))?;
                serde_json::from_str::<ConfigFile>(&text).map_err(|e| NormalizeError::Config(format!("{}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        let parse_num = |key: &str, v: String| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| NormalizeError::Config(format!("{key} must be a number, got `{v}`")))
        };
        if let Some(v) = env(ENV_ENDPOINT) {
            file.endpoint = Some(v);
        }
        if let Some(v) = env(ENV_MODEL) {
            file.model = Some(v);
        }
        if let Some(v) = env(ENV_API_KEY) {
            file.api_key = Some(v);
        }
        if let Some(v) = env(ENV_TIMEOUT) {
            file.timeout_secs = Some(parse_num(ENV_TIMEOUT, v)?);
        }
        if let Some(v) = env(ENV_MAX_IN_FLIGHT) {
            file.max_in_flight = Some(parse_num(ENV_MAX_IN_FLIGHT, v)? as usize);
        }
        let endpoint = file
            .endpoint
            .ok_or_else(|| NormalizeError::Config(format!("no endpoint (set {ENV_ENDPOINT} or `endpoint`)")))?;
        let model = file
            .model
            .ok_or_else(|| NormalizeError::Config(format!("no model (set {ENV_MODEL} or `model`)")))?;
        Ok(RemoteConfig {
            endpoint,
            model,
            api_key: file.api_key.filter(|k| !k.is_empty()),
            timeout: file.timeout_secs.map_or(Self::DEFAULT_TIMEOUT, Duration::from_secs),
            max_in_flight: file.max_in_flight.unwrap_or(Self::DEFAULT_MAX_IN_FLIGHT).max(1),
        })
    }
}

/// Decoding is pinned: temperature 0, seed 0.
pub fn request_body(model: &str, prompt: &str) -> Value {
    json!({
        "model": model,
        "temperature": 0,
        "seed": 0,
        "prompt": prompt,
    })
}

pub trait Transport: Send + Sync {
    /// Posts `body` and returns the raw response text.
    fn post(&self, config: &RemoteConfig, body: &Value) -> Result<String, String>;
}

#[derive(Debug, Default)]
pub struct HttpTransport;

impl Transport for HttpTransport {
    fn post(&self, config: &RemoteConfig, body: &Value) -> Result<String, String> {
        let agent = ureq::AgentBuilder::new().timeout(config.timeout).build();
        let mut req = agent.post(&config.endpoint).set("Content-Type", "application/json");
        if let Some(key) = &config.api_key {
            req = req.set("Authorization", &format!("Bearer {key}"));
        }
        match req.send_json(body) {
            Ok(resp) => resp.into_string().map_err(|e| e.to_string()),
            Err(ureq::Error::Status(code, resp)) => {
                let text = resp.into_string().unwrap_or_default();
                Err(format!("HTTP {code}: {}", text.chars().take(200).collect::<String>()))
            }
            Err(e) => Err(e.to_string()),
        }
    }
}

pub struct RemoteNormalizer {
    config: RemoteConfig,
    transport: Box<dyn Transport>,
}

impl RemoteNormalizer {
    pub fn new(config: RemoteConfig) -> Self {
        Self::with_transport(config, Box::new(HttpTransport))
    }

    pub fn with_transport(config: RemoteConfig, transport: Box<dyn Transport>) -> Self {
        RemoteNormalizer { config, transport }
    }

    pub fn config(&self) -> &RemoteConfig {
        &self.config
    }

    /// The raw completion body, before extraction.
    pub fn complete(&self, raw: &str, mode: Mode) -> Result<String, NormalizeError> {
        let prompt = mode.template().render(raw);
        self.transport
            .post(&self.config, &request_body(&self.config.model, &prompt))
            .map_err(NormalizeError::Transport)
    }
}

impl Normalizer for RemoteNormalizer {
    fn name(&self) -> &'static str {
        "remote"
    }

    fn normalize(&self, raw: &str, mode: Mode) -> Result<NormalizationResult, NormalizeError> {
        parse_response(mode, &self.complete(raw, mode)?)
    }
}
