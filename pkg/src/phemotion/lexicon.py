"""Compact emotion-word lexicon used by the offline mock provider."""

EMOTION_LEXICON = (
    "afraid", "anger", "angry", "anticipation", "anxiety", "anxious", "awe",
    "boredom", "calm", "confused", "confusion", "curiosity", "curious",
    "delight", "despair", "disgust", "dread", "envy", "excited", "excitement",
    "fear", "frustrated", "frustration", "grateful", "gratitude", "grief",
    "guilt", "happiness", "happy", "hate", "hope", "hopeful", "joy",
    "loneliness", "lonely", "longing", "love", "melancholy", "nostalgia",
    "nostalgic", "panic", "peace", "peaceful", "pride", "proud", "regret",
    "relief", "sad", "sadness", "satisfaction", "serene", "serenity", "shame",
    "surprise", "tenderness", "trust", "unease", "warmth", "wistful",
    "wonder", "worried", "worry",
)

LEXICON_SET = frozenset(EMOTION_LEXICON)

# Appended in this order when a transcript yields fewer than 4 emotion words.
FILLER_LABELS = ("calm", "curiosity", "hope", "unease")
