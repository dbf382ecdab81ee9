//! Prompt templates for the remote normalizer, shipped as text assets.

use super::Mode;

/// A prompt template and how to fill it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PromptTemplate {
    pub id: &'static str,
    pub text: &'static str,
    /// `{{`/`}}` in the asset stand for literal braces.
    pub doubled_braces: bool,
}

const NORM: PromptTemplate = PromptTemplate {
    id: "norm-v1",
    text: include_str!("../../prompts/norm.txt"),
    doubled_braces: true,
};

const EPN_VALIDITY: PromptTemplate = PromptTemplate {
    id: "epn-validity-v1",
    text: include_str!("../../prompts/epn_validity.txt"),
    doubled_braces: true,
};

const EPN_RELEVANCE: PromptTemplate = PromptTemplate {
    id: "epn-relevance-v1",
    text: include_str!("../../prompts/epn_relevance.txt"),
    doubled_braces: false,
};

pub const PLACEHOLDER: &str = "{syllogism}";

impl PromptTemplate {
    pub fn for_mode(mode: Mode) -> PromptTemplate {
        match mode {
            Mode::EnglishNorm => NORM,
            Mode::EpnValidity => EPN_VALIDITY,
            Mode::EpnRelevance => EPN_RELEVANCE,
        }
    }

    /// Substitutes the argument text for the placeholder.
    pub fn render(&self, syllogism: &str) -> String {
        let mut out = String::with_capacity(self.text.len() + syllogism.len());
        let mut rest = self.text;
        while let Some(pos) = rest.find(PLACEHOLDER) {
            out.push_str(&self.unescape(&rest[..pos]));
            out.push_str(syllogism);
            rest = &rest[pos + PLACEHOLDER.len()..];
        }
        out.push_str(&self.unescape(rest));
        out
    }

    fn unescape(&self, chunk: &str) -> String {
        if self.doubled_braces {
            chunk.replace("{{", "{").replace("}}", "}")
        } else {
            chunk.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_template_has_one_placeholder() {
        for mode in Mode::ALL {
            let t = PromptTemplate::for_mode(mode);
            assert_eq!(t.text.matches(PLACEHOLDER).count(), 1, "{}", t.id);
        }
    }

    #[test]
    fn norm_prompt_renders_json_braces() {
        let out = PromptTemplate::for_mode(Mode::EnglishNorm).render("All B are A.");
        assert!(out.ends_with("Transform:\nAll B are A.\n"));
        assert!(out.contains("{\n  \"reasoning\""));
        assert!(!out.contains("{{"));
    }

    #[test]
    fn relevance_prompt_keeps_single_braces() {
        let out = PromptTemplate::for_mode(Mode::EpnRelevance).render("X");
        assert!(out.starts_with("You are an expert logical translator"));
        assert!(out.contains("Given X, extract exactly:"));
        assert!(out.contains("{\n  \"detected_language\""));
    }

    #[test]
    fn epn_validity_lists_quantifier_guide() {
        let out = PromptTemplate::for_mode(Mode::EpnValidity).render("Hakuna samaki ni nyoka.");
        assert!(out.contains("Given Hakuna samaki ni nyoka., extract its logical structure."));
        assert!(out.contains("QUANTIFIER GUIDE:"));
    }
}
